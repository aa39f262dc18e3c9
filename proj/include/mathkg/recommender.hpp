#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mathkg/execution.hpp"
#include "mathkg/graph.hpp"

namespace mathkg {

class EntityError : public std::runtime_error {
 public:
  enum class Kind { UnknownEntity, NotAFormulation, NotAnAlgorithm, NotAResearchProblem, NotATask };
  EntityError(Kind kind, const Iri& iri, const std::string& message)
      : std::runtime_error(message), kind_(kind), iri_(iri) {}
  Kind kind() const noexcept { return kind_; }
  const Iri& iri() const noexcept { return iri_; }

 private:
  Kind kind_;
  Iri iri_;
};

enum class Status { Recommended, Possible, Excluded };
std::string_view status_name(Status s) noexcept;

struct Reason {
  std::string relation;  // requires | recommends | precludes
  Iri pattern;
  bool matched = false;

  auto operator<=>(const Reason&) const = default;
};

struct Verdict {
  Iri algorithm;
  Status status = Status::Possible;
  std::vector<Reason> reasons;  // sorted

  // "precluded" when a precludes pattern matched, "unusable" when a requires
  // pattern failed (precluded wins when both hold), empty otherwise.
  std::string exclusion_code() const;
};

struct Recommendation {
  Iri task;
  std::vector<Iri> problems;  // algorithmic tasks the task is equivalent to
  Iri formulation;
  std::vector<Verdict> ranked;    // Recommended, then Possible; ties by algorithm IRI
  std::vector<Verdict> excluded;  // by algorithm IRI
};

struct RecommendResult {
  std::vector<Recommendation> recommendations;  // by (task, formulation)
  std::vector<std::string> warnings;
};

// Added and removed (predicate, object) pairs applied on top of a
// formulation's stored properties.
struct PropertyOverrides {
  PropertySet add;
  PropertySet remove;
};

// mmdb-namespace (predicate, object) pairs of a formulation, schema relations
// excluded. Throws EntityError(NotAFormulation).
PropertySet formulation_properties(const Graph& graph, const Iri& formulation);

// pattern ⊆ formulation.
bool pattern_matches(const PropertySet& formulation_props, const PropertySet& pattern_props);

// Throws EntityError(NotAnAlgorithm / NotAFormulation).
Verdict classify_algorithm(const Graph& graph, const Iri& algorithm, const Iri& formulation);
Verdict classify_algorithm(const Graph& graph, const Iri& algorithm,
                           const PropertySet& formulation_props);

// Throws EntityError(UnknownEntity / NotAResearchProblem).
RecommendResult recommend(const Graph& graph, const Iri& research_problem,
                          Execution execution = Execution::Parallel);

// One (task, formulation) pair, optionally with property overrides.
// Throws EntityError(UnknownEntity / NotATask / NotAFormulation).
Recommendation recommend_for(const Graph& graph, const Iri& task, const Iri& formulation,
                             const PropertyOverrides& overrides = {},
                             Execution execution = Execution::Parallel);

std::string recommendations_to_json(const RecommendResult& result, const PrefixMap& prefixes);
std::string recommendations_to_text(const RecommendResult& result, const PrefixMap& prefixes);

}  // namespace mathkg
