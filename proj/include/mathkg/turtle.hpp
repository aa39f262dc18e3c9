#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mathkg/errors.hpp"
#include "mathkg/graph.hpp"

namespace mathkg::turtle {

struct Document {
  std::vector<Triple> triples;
  PrefixMap prefixes;
};

// Parses the persistence subset of Turtle: @prefix/PREFIX directives, <IRI>s,
// prefixed names, `a`, `;` and `,` abbreviations, string/integer/decimal/
// boolean literals, `^^` datatypes and `@lang` tags. No blank nodes,
// collections or @base. Throws ParseError at the first problem.
Document parse_document(std::string_view text);

// Deterministic rendering: used prefixes sorted, then subjects in order with
// predicates sorted and objects sorted. LF line endings.
std::string serialize(const Graph& graph);

}  // namespace mathkg::turtle
