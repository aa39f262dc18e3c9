#include <gtest/gtest.h>

#include <random>

#include "json.hpp"
#include "mathkg/query.hpp"
#include "mathkg/recommender.hpp"
#include "mathkg/synthetic.hpp"
#include "recommender_checks.hpp"
#include "support.hpp"

namespace mathkg {
namespace {

PropertyPair flag(const std::string& name, bool v = true) { return {mmdb(name), Term(Literal::boolean(v))}; }

std::set<std::string> non_excluded(const Recommendation& r) {
  std::set<std::string> out;
  for (const auto& v : r.ranked) out.insert(v.algorithm.str());
  return out;
}

TEST(Recommender, VerdictSuite) {
  for (const auto& c : test::verdict_cases()) {
    EXPECT_EQ(test::check_verdict(test::seed(), c), "");
  }
}

TEST(Recommender, FormulationProperties) {
  const auto& g = test::seed();
  auto air = formulation_properties(g, mmdb("FreeFallEquationAirDrag"));
  EXPECT_TRUE(air.count(flag("isStiff")));
  for (const auto& [p, o] : air) EXPECT_FALSE(schema().is_relation(p)) << p.str();
  auto vacuum = formulation_properties(g, mmdb("FreeFallEquationVacuum"));
  EXPECT_TRUE(vacuum.count({mmdb("smoothnessOrder"), Term(Literal::integer(4))}));
  EXPECT_THROW(formulation_properties(g, madb("RKim11")), EntityError);

  Graph bare = graph_from({{mmdb("F"), rdf_type(), class_iri(OntologyClass::MathematicalFormulation)}});
  EXPECT_TRUE(formulation_properties(bare, mmdb("F")).empty());
}

TEST(Recommender, PatternMatching) {
  PropertySet form = {flag("isStiff"), flag("isLinear", false)};
  EXPECT_TRUE(pattern_matches(form, {flag("isStiff")}));
  EXPECT_TRUE(pattern_matches(form, {}));
  EXPECT_FALSE(pattern_matches({{mmdb("smoothnessOrder"), Term(Literal::integer(4))}}, {flag("isStiff")}));
  // exact pair equality, no ordering of values
  EXPECT_FALSE(pattern_matches({{mmdb("smoothnessOrder"), Term(Literal::integer(5))}},
                               {{mmdb("smoothnessOrder"), Term(Literal::integer(4))}}));
}

TEST(Recommender, EntityErrors) {
  const auto& g = test::seed();
  EXPECT_THROW(classify_algorithm(g, mmdb("FreeFallEquationVacuum"), mmdb("FreeFallEquationVacuum")), EntityError);
  EXPECT_THROW(classify_algorithm(g, madb("RKim11"), madb("RKex11")), EntityError);
  try {
    recommend(g, mmdb("Nope"));
    FAIL();
  } catch (const EntityError& e) {
    EXPECT_EQ(e.kind(), EntityError::Kind::UnknownEntity);
  }
  try {
    recommend(g, mmdb("Pomology"));
    FAIL();
  } catch (const EntityError& e) {
    EXPECT_EQ(e.kind(), EntityError::Kind::NotAResearchProblem);
  }
}

TEST(Recommender, FruitProblem) {
  auto result = recommend(test::seed(), mmdb("GravitationalEffectsOnFruit"));
  std::map<std::string, std::set<std::string>> by_form;
  for (const auto& r : result.recommendations) {
    if (r.task != mmdb("FreeFallDetermineVelocity")) continue;
    by_form[r.formulation.str()] = non_excluded(r);
  }
  EXPECT_EQ(by_form[mmdb("FreeFallEquationAirDrag").str()], std::set<std::string>{madb("RKim11").str()});
  EXPECT_EQ(by_form[mmdb("FreeFallEquationVacuum").str()],
            (std::set<std::string>{madb("RKex11").str(), madb("RKim11").str(), madb("RK44kutta").str()}));
  for (const auto& r : result.recommendations) {
    for (size_t i = 1; i < r.ranked.size(); ++i) {
      const auto& a = r.ranked[i - 1];
      const auto& b = r.ranked[i];
      EXPECT_TRUE(a.status < b.status || (a.status == b.status && a.algorithm < b.algorithm));
    }
  }
}

TEST(Recommender, EveryCandidateAppearsOnce) {
  const auto& g = test::seed();
  auto result = recommend(g, mmdb("GravitationalEffectsOnFruit"));
  for (const auto& r : result.recommendations) {
    std::multiset<Iri> seen;
    for (const auto& v : r.ranked) seen.insert(v.algorithm);
    for (const auto& v : r.excluded) seen.insert(v.algorithm);
    std::set<Iri> expected;
    for (const auto& p : r.problems) {
      for (const auto& a : g.subjects(madb("solves"), Term(p))) expected.insert(a);
    }
    EXPECT_EQ(std::set<Iri>(seen.begin(), seen.end()), expected);
    EXPECT_EQ(seen.size(), expected.size());
  }
}

TEST(Recommender, ProblemWithoutModels) {
  Graph g = graph_from({{mmdb("P"), rdf_type(), class_iri(OntologyClass::ResearchProblem)}});
  auto result = recommend(g, mmdb("P"));
  EXPECT_TRUE(result.recommendations.empty());
  EXPECT_EQ(result.warnings.size(), 1u);
}

std::set<std::vector<std::string>> rows_of(const query::ResultTable& t) {
  std::set<std::vector<std::string>> out;
  for (const auto& r : t.rows) {
    std::vector<std::string> line;
    for (const auto& c : r) line.push_back(c->lexical());
    out.insert(line);
  }
  return out;
}

std::set<std::vector<std::string>> rows_of(const RecommendResult& result, const Graph& g) {
  std::set<std::vector<std::string>> out;
  for (const auto& r : result.recommendations) {
    for (const auto& v : r.ranked) {
      for (const auto& mod : g.objects(r.formulation, mmdb("containedAsFormulationIn"))) {
        if (!g.contains({mmdb("GravitationalEffectsOnFruit"), mmdb("modeledBy"), mod})) continue;
        if (!g.contains({r.task, mmdb("appliesModel"), mod})) continue;
        for (const auto& p : r.problems) {
          if (g.contains({v.algorithm, madb("solves"), Term(p)})) {
            out.insert({mod.lexical(), r.task.str(), p.str(), r.formulation.str(), v.algorithm.str()});
          }
        }
      }
    }
  }
  return out;
}

TEST(Recommender, AgreesWithRequiresQuery) {
  const auto& g = test::seed();
  auto q = query::parse_query(read_text(test::source_dir() / "queries" / "fruit_requires.rq"));
  auto rec = recommend(g, mmdb("GravitationalEffectsOnFruit"));
  EXPECT_EQ(rows_of(rec, g), rows_of(query::evaluate(g, q)));
}

TEST(Recommender, WithoutRequiresAgreesWithVerbatimQuery) {
  Graph g = test::seed();
  for (const auto& t : std::vector<Triple>(g.triples().begin(), g.triples().end())) {
    if (t.predicate == madb("requires")) g.remove(t);
  }
  auto q = query::parse_query(test::fruit_query());
  auto rec = recommend(g, mmdb("GravitationalEffectsOnFruit"));
  EXPECT_EQ(rows_of(rec, g), rows_of(query::evaluate(g, q)));
}

TEST(Recommender, PrecludesEquivalenceOnSeed) {
  auto stats = test::precludes_equivalence(test::seed(), test::fruit_query());
  EXPECT_GT(stats.pairs, 100u);
  EXPECT_GT(stats.precluded, 0u);
  EXPECT_TRUE(stats.disagreements.empty()) << stats.disagreements.front();
}

TEST(Recommender, Overrides) {
  const auto& g = test::seed();
  auto task = mmdb("FreeFallDetermineVelocity");
  auto form = mmdb("FreeFallEquationAirDrag");
  auto status_of = [](const Recommendation& r, const Iri& alg) {
    for (const auto& v : r.ranked) {
      if (v.algorithm == alg) return v.status;
    }
    return Status::Excluded;
  };
  auto base = recommend_for(g, task, form);
  EXPECT_EQ(status_of(base, madb("RKex11")), Status::Excluded);
  PropertyOverrides remove_stiff;
  remove_stiff.remove.insert(flag("isStiff"));
  auto changed = recommend_for(g, task, form, remove_stiff);
  EXPECT_EQ(status_of(changed, madb("RKex11")), Status::Possible);
  EXPECT_EQ(status_of(changed, madb("RKim11")), Status::Possible);

  PropertyOverrides add_smooth;
  add_smooth.add.insert({mmdb("smoothnessOrder"), Term(Literal::integer(4))});
  add_smooth.remove.insert(flag("isStiff"));
  EXPECT_EQ(status_of(recommend_for(g, task, form, add_smooth), madb("RK44kutta")), Status::Recommended);
  EXPECT_THROW(recommend_for(g, form, form), EntityError);
}

TEST(Recommender, AlgorithmWithoutSelectionEdgesIsPossible) {
  const auto& g = test::seed();
  for (const auto& f : g.instances_of(OntologyClass::MathematicalFormulation)) {
    auto v = classify_algorithm(g, madb("LUDecomposition"), f);
    EXPECT_EQ(v.status, Status::Possible);
    EXPECT_TRUE(v.reasons.empty());
  }
}

// Adding pairs can only turn precludes matches on and requires failures off.
TEST(RecommenderProperty, MonotoneInProperties) {
  const auto& g = test::seed();
  std::vector<PropertyPair> pool;
  for (const auto& f : g.instances_of(OntologyClass::MathematicalFormulation)) {
    for (const auto& p : formulation_properties(g, f)) pool.push_back(p);
  }
  std::mt19937_64 rng(17);
  auto algorithms = g.instances_of(OntologyClass::Algorithm);
  for (int round = 0; round < 300; ++round) {
    PropertySet small;
    for (size_t n = rng() % 4; n > 0; --n) small.insert(pool[rng() % pool.size()]);
    PropertySet large = small;
    for (size_t n = 1 + rng() % 3; n > 0; --n) large.insert(pool[rng() % pool.size()]);
    for (const auto& a : algorithms) {
      auto vs = classify_algorithm(g, a, small);
      auto vl = classify_algorithm(g, a, large);
      ASSERT_EQ(vs.reasons.size(), vl.reasons.size());
      for (size_t i = 0; i < vs.reasons.size(); ++i) {
        const auto& rs = vs.reasons[i];
        const auto& rl = vl.reasons[i];
        ASSERT_EQ(rs.pattern, rl.pattern);
        if (rs.matched) EXPECT_TRUE(rl.matched);
      }
      if (vs.exclusion_code() == "precluded") EXPECT_EQ(vl.exclusion_code(), "precluded");
      if (vl.exclusion_code() == "unusable") EXPECT_EQ(vs.exclusion_code(), "unusable");
    }
  }
}

TEST(RecommenderProperty, VerdictInvariants) {
  const auto& g = test::seed();
  for (const auto& f : g.instances_of(OntologyClass::MathematicalFormulation)) {
    for (const auto& a : g.instances_of(OntologyClass::Algorithm)) {
      auto v = classify_algorithm(g, a, f);
      EXPECT_TRUE(std::is_sorted(v.reasons.begin(), v.reasons.end()));
      auto any = [&](const std::string& rel, bool matched) {
        return std::any_of(v.reasons.begin(), v.reasons.end(),
                           [&](const Reason& r) { return r.relation == rel && r.matched == matched; });
      };
      if (v.status == Status::Excluded) EXPECT_TRUE(any("precludes", true) || any("requires", false));
      if (v.status == Status::Recommended) EXPECT_TRUE(any("recommends", true));
      if (v.status == Status::Possible) EXPECT_FALSE(any("recommends", true));
    }
  }
}

TEST(RecommenderProperty, SerialEqualsParallel) {
  Graph g = synthetic_graph(1500, 15000, 21);
  auto a = recommend(g, mmdb("GravitationalEffectsOnFruit"), Execution::Serial);
  auto b = recommend(g, mmdb("GravitationalEffectsOnFruit"), Execution::Parallel);
  EXPECT_EQ(recommendations_to_json(a, g.prefixes()), recommendations_to_json(b, g.prefixes()));
  EXPECT_FALSE(a.recommendations.empty());
}

TEST(Recommender, JsonAndText) {
  const auto& g = test::seed();
  auto result = recommend(g, mmdb("GravitationalEffectsOnFruit"));
  auto j = nlohmann::json::parse(recommendations_to_json(result, g.prefixes()));
  EXPECT_FALSE(j["recommendations"].empty());
  auto text = recommendations_to_text(result, g.prefixes());
  EXPECT_NE(text.find("madb:RKim11"), std::string::npos);
  EXPECT_NE(text.find("Recommended"), std::string::npos);
}

}  // namespace
}  // namespace mathkg
