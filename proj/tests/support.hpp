#pragma once

#include <filesystem>
#include <string>

#include "mathkg/dataset.hpp"
#include "mathkg/graph.hpp"

namespace mathkg::test {

inline std::filesystem::path source_dir() { return MATHKG_SOURCE_DIR; }
inline std::filesystem::path data_dir() { return source_dir() / "data"; }
inline std::filesystem::path templates_dir() { return source_dir() / "templates"; }

inline const Graph& seed() {
  static const Graph g = load_data(data_dir());
  return g;
}

inline std::string fruit_query() { return read_text(source_dir() / "queries" / "fruit.rq"); }

}  // namespace mathkg::test
