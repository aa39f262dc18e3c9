#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mathkg/errors.hpp"
#include "mathkg/execution.hpp"
#include "mathkg/graph.hpp"

namespace mathkg::query {

struct GroupPattern;

struct FilterExpr {
  enum class Kind { Exists, NotExists, Contains, Str, Variable, Constant };

  Kind kind = Kind::Constant;
  std::shared_ptr<const GroupPattern> group;  // Exists / NotExists
  std::vector<FilterExpr> args;               // Contains (2) / Str (1)
  std::string variable;                       // Variable
  std::optional<Term> constant;               // Constant
  int line = 0;
  int column = 0;
};

struct GroupPattern {
  std::vector<TriplePattern> patterns;
  std::vector<FilterExpr> filters;
};

struct SelectQuery {
  PrefixMap prefixes;
  std::vector<std::string> projection;
  GroupPattern where;
};

// Parses the supported subset: PREFIX, SELECT [DISTINCT] vars|*, WHERE { },
// triple patterns with `;`/`,`, FILTER with EXISTS / NOT EXISTS / CONTAINS /
// STR over variables and constants, `#` comments. Anything else is a
// ParseError (kind Unsupported for recognised SPARQL outside the subset,
// kind Prefix for undeclared prefixes).
SelectQuery parse_query(std::string_view text);

using Row = std::vector<std::optional<Term>>;

struct ResultTable {
  std::vector<std::string> header;
  std::vector<Row> rows;
  std::vector<std::string> warnings;
};

struct EvaluateOptions {
  Execution execution = Execution::Parallel;
  // Reorder triple patterns most-selective-first. Join order never changes
  // the solution set.
  bool reorder = true;
};

// Set semantics over the projected columns, rows sorted by projected columns.
// Projected variables that are never bound produce an empty column and a
// warning.
ResultTable evaluate(const Graph& graph, const SelectQuery& query, EvaluateOptions options = {});

enum class ResultFormat { AlignedText, Csv, JsonRows };

std::optional<ResultFormat> result_format_from_name(std::string_view name);
std::string format_results(const ResultTable& table, ResultFormat format,
                           const PrefixMap& prefixes);

// Display form used by the text and CSV renderers.
std::string display_term(const Term& term, const PrefixMap& prefixes);

// Variables mentioned anywhere in the group, nested groups included.
std::vector<std::string> variables_in(const GroupPattern& group);

}  // namespace mathkg::query
