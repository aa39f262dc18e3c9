#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include "mathkg/execution.hpp"
#include "mathkg/graph.hpp"

namespace mathkg {

enum class Severity { Error, Warning };

std::string_view severity_name(Severity s) noexcept;

struct Finding {
  Severity severity = Severity::Error;
  std::string code;  // "V1" .. "V9"
  Iri subject;
  std::string message;

  auto operator<=>(const Finding&) const = default;
};

struct ValidationReport {
  std::vector<Finding> findings;  // sorted by (severity, code, subject, message)

  size_t errors() const noexcept;
  size_t warnings() const noexcept;
  bool clean() const noexcept { return findings.empty(); }
};

// Checks:
//   V1 relation domain/range by rdf:type (error)
//   V2 missing inverse edge (warning)
//   V3 quantity referenced by containsQuantity missing or untyped (error)
//   V4 Quantity without isKindOf (warning)
//   V5 external id shape (warning)
//   V6 ComputationalTask without equivalentTo (warning)
//   V7 requires/recommends/precludes target not a formulation (error)
//   V8 formulation with LaTeX but no contained quantity (warning)
//   V9 LaTeX symbol of a formulation not matched by any contained quantity (warning)
ValidationReport validate(const Graph& graph, Execution execution = Execution::Parallel);

// Adds every missing inverse edge. Returns the number of triples added.
size_t repair_inverses(Graph& graph);

std::string report_to_json(const ValidationReport& report, const PrefixMap& prefixes);
std::string report_to_text(const ValidationReport& report, const PrefixMap& prefixes);

// Symbols of a LaTeX expression: single Latin letters and Greek letter
// commands, each with its subscript as written (C_{D}, s_m). \mathrm/\text
// arguments are skipped, as is a bare differential "d".
std::vector<std::string> latex_symbols(std::string_view latex);

// Comparison key for a symbol. Index subscripts (letters i to n, comma
// separated) drop out, so s_m, s_n and s match; braces are removed from
// naming subscripts, so C_{D} and C_D match.
std::string symbol_key(std::string_view symbol);

}  // namespace mathkg
