#include "mathkg/recommender.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "json.hpp"
#include "mathkg/query.hpp"

namespace mathkg {

namespace {

const Iri& equivalent_to() {
  static const Iri iri = mmdb("equivalentTo");
  return iri;
}

void require_type(const Graph& graph, const Iri& iri, OntologyClass cls, EntityError::Kind kind) {
  if (graph.has_type(iri, cls)) return;
  if (!graph.mentions(iri)) {
    throw EntityError(EntityError::Kind::UnknownEntity, iri, "unknown entity <" + iri.str() + ">");
  }
  throw EntityError(kind, iri,
                    "<" + iri.str() + "> is not a " + std::string(class_display_name(cls)));
}

// Objects of `forward` from `subject` plus subjects of `inverse` pointing at it.
std::set<Iri> neighbours(const Graph& graph, const Iri& subject, const Iri& forward,
                         const Iri& inverse) {
  std::set<Iri> out;
  for (const auto& o : graph.objects(subject, forward)) {
    if (const auto* iri = o.as_iri()) out.insert(*iri);
  }
  for (const auto& s : graph.subjects(inverse, Term(subject))) out.insert(s);
  return out;
}

std::vector<Iri> pattern_targets(const Graph& graph, const Iri& algorithm, std::string_view rel) {
  std::vector<Iri> out;
  for (const auto& o : graph.objects(algorithm, madb(std::string(rel)))) {
    if (const auto* iri = o.as_iri()) out.push_back(*iri);
  }
  return out;
}

PropertySet pattern_properties(const Graph& graph, const Iri& pattern) {
  PropertySet out;
  for (auto& [p, o] : graph.properties_of(pattern, ns::kMmdb)) {
    if (!schema().is_relation(p)) out.emplace(p, o);
  }
  return out;
}

void rank(Recommendation& rec, std::vector<Verdict> verdicts) {
  std::sort(verdicts.begin(), verdicts.end(), [](const Verdict& a, const Verdict& b) {
    return std::tie(a.status, a.algorithm) < std::tie(b.status, b.algorithm);
  });
  for (auto& v : verdicts) {
    (v.status == Status::Excluded ? rec.excluded : rec.ranked).push_back(std::move(v));
  }
}

std::vector<Verdict> classify_all(const Graph& graph, const std::vector<Iri>& algorithms,
                                  const PropertySet& props, Execution execution) {
  for (const auto& a : algorithms) {
    require_type(graph, a, OntologyClass::Algorithm, EntityError::Kind::NotAnAlgorithm);
  }
  std::vector<Verdict> out(algorithms.size());
  const auto n = static_cast<long>(algorithms.size());
  if (execution == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) {
      auto k = static_cast<size_t>(i);
      out[k] = classify_algorithm(graph, algorithms[k], props);
    }
  } else {
    for (long i = 0; i < n; ++i) {
      auto k = static_cast<size_t>(i);
      out[k] = classify_algorithm(graph, algorithms[k], props);
    }
  }
  return out;
}

Recommendation build(const Graph& graph, const Iri& task, const Iri& formulation,
                     const PropertySet& props, Execution execution) {
  Recommendation rec;
  rec.task = task;
  rec.formulation = formulation;
  std::set<Iri> algorithms;
  for (const auto& o : graph.objects(task, equivalent_to())) {
    const auto* problem = o.as_iri();
    if (!problem) continue;
    rec.problems.push_back(*problem);
    for (const auto& alg : neighbours(graph, *problem, madb("solvedBy"), madb("solves"))) {
      algorithms.insert(alg);
    }
  }
  rank(rec, classify_all(graph, {algorithms.begin(), algorithms.end()}, props, execution));
  return rec;
}

}  // namespace

std::string_view status_name(Status s) noexcept {
  switch (s) {
    case Status::Recommended: return "Recommended";
    case Status::Possible: return "Possible";
    case Status::Excluded: return "Excluded";
  }
  return "";
}

std::string Verdict::exclusion_code() const {
  bool unusable = false;
  for (const auto& r : reasons) {
    if (r.relation == "precludes" && r.matched) return "precluded";
    if (r.relation == "requires" && !r.matched) unusable = true;
  }
  return unusable ? "unusable" : "";
}

PropertySet formulation_properties(const Graph& graph, const Iri& formulation) {
  require_type(graph, formulation, OntologyClass::MathematicalFormulation,
               EntityError::Kind::NotAFormulation);
  return pattern_properties(graph, formulation);
}

bool pattern_matches(const PropertySet& formulation_props, const PropertySet& pattern_props) {
  return std::includes(formulation_props.begin(), formulation_props.end(), pattern_props.begin(),
                       pattern_props.end());
}

Verdict classify_algorithm(const Graph& graph, const Iri& algorithm, const Iri& formulation) {
  return classify_algorithm(graph, algorithm, formulation_properties(graph, formulation));
}

Verdict classify_algorithm(const Graph& graph, const Iri& algorithm,
                           const PropertySet& formulation_props) {
  require_type(graph, algorithm, OntologyClass::Algorithm, EntityError::Kind::NotAnAlgorithm);
  Verdict v;
  v.algorithm = algorithm;
  bool excluded = false;
  bool recommended = false;
  for (std::string_view rel : {"requires", "recommends", "precludes"}) {
    for (const auto& pattern : pattern_targets(graph, algorithm, rel)) {
      bool matched = pattern_matches(formulation_props, pattern_properties(graph, pattern));
      v.reasons.push_back({std::string(rel), pattern, matched});
      if (rel == "requires" && !matched) excluded = true;
      if (rel == "precludes" && matched) excluded = true;
      if (rel == "recommends" && matched) recommended = true;
    }
  }
  std::sort(v.reasons.begin(), v.reasons.end());
  v.status = excluded ? Status::Excluded : recommended ? Status::Recommended : Status::Possible;
  return v;
}

RecommendResult recommend(const Graph& graph, const Iri& research_problem, Execution execution) {
  require_type(graph, research_problem, OntologyClass::ResearchProblem,
               EntityError::Kind::NotAResearchProblem);
  RecommendResult result;
  auto models = neighbours(graph, research_problem, mmdb("modeledBy"), mmdb("models"));
  if (models.empty()) {
    result.warnings.push_back("research problem " + display_iri(research_problem, graph.prefixes()) +
                              " has no modeledBy edge");
    return result;
  }
  std::set<std::pair<Iri, Iri>> pairs;
  for (const auto& model : models) {
    auto tasks = neighbours(graph, model, mmdb("appliedByTask"), mmdb("appliesModel"));
    auto forms =
        neighbours(graph, model, mmdb("containsFormulation"), mmdb("containedAsFormulationIn"));
    for (const auto& t : tasks) {
      for (const auto& f : forms) pairs.emplace(t, f);
    }
  }
  for (const auto& [task, form] : pairs) {
    PropertySet props = graph.has_type(form, OntologyClass::MathematicalFormulation)
                            ? pattern_properties(graph, form)
                            : PropertySet{};
    result.recommendations.push_back(build(graph, task, form, props, execution));
  }
  return result;
}

Recommendation recommend_for(const Graph& graph, const Iri& task, const Iri& formulation,
                             const PropertyOverrides& overrides, Execution execution) {
  require_type(graph, task, OntologyClass::ComputationalTask, EntityError::Kind::NotATask);
  PropertySet props = formulation_properties(graph, formulation);
  for (const auto& p : overrides.remove) props.erase(p);
  for (const auto& p : overrides.add) props.insert(p);
  return build(graph, task, formulation, props, execution);
}

std::string recommendations_to_json(const RecommendResult& result, const PrefixMap& prefixes) {
  using json = nlohmann::ordered_json;
  auto iri = [&](const Iri& i) { return json{{"iri", i.str()}, {"display", display_iri(i, prefixes)}}; };
  auto verdict = [&](const Verdict& v) {
    json reasons = json::array();
    for (const auto& r : v.reasons) {
      reasons.push_back({{"relation", r.relation},
                         {"pattern", r.pattern.str()},
                         {"display", display_iri(r.pattern, prefixes)},
                         {"matched", r.matched}});
    }
    json out = iri(v.algorithm);
    out["status"] = status_name(v.status);
    if (auto code = v.exclusion_code(); !code.empty()) out["code"] = code;
    out["reasons"] = std::move(reasons);
    return out;
  };
  json recs = json::array();
  for (const auto& rec : result.recommendations) {
    json problems = json::array();
    for (const auto& p : rec.problems) problems.push_back(iri(p));
    json ranked = json::array();
    for (const auto& v : rec.ranked) ranked.push_back(verdict(v));
    json excluded = json::array();
    for (const auto& v : rec.excluded) excluded.push_back(verdict(v));
    recs.push_back({{"task", iri(rec.task)},
                    {"problems", std::move(problems)},
                    {"formulation", iri(rec.formulation)},
                    {"ranked", std::move(ranked)},
                    {"excluded", std::move(excluded)}});
  }
  json doc;
  doc["recommendations"] = std::move(recs);
  doc["warnings"] = result.warnings;
  return doc.dump(2) + "\n";
}

std::string recommendations_to_text(const RecommendResult& result, const PrefixMap& prefixes) {
  query::ResultTable table;
  table.header = {"task", "formulation", "status", "algorithm", "reasons"};
  auto add = [&](const Recommendation& rec, const Verdict& v) {
    std::string reasons;
    for (const auto& r : v.reasons) {
      if (!reasons.empty()) reasons += "; ";
      reasons += r.relation + " " + display_iri(r.pattern, prefixes) +
                 (r.matched ? " (matched)" : " (not matched)");
    }
    table.rows.push_back({Term(rec.task), Term(rec.formulation),
                          Term(Literal::string(std::string(status_name(v.status)))),
                          Term(v.algorithm), Term(Literal::string(reasons))});
  };
  for (const auto& rec : result.recommendations) {
    for (const auto& v : rec.ranked) add(rec, v);
    for (const auto& v : rec.excluded) add(rec, v);
  }
  table.warnings = result.warnings;
  return query::format_results(table, query::ResultFormat::AlignedText, prefixes);
}

}  // namespace mathkg
