#pragma once

#include <iosfwd>

namespace mathkg {

// Exit codes: 0 ok, 1 failure (validation errors, unknown entity, merge
// conflicts), 2 usage error, 3 parse error in data, query or template.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mathkg
