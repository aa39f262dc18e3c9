#include <gtest/gtest.h>

#include <chrono>
#include <random>

#include "mathkg/query.hpp"
#include "mathkg/turtle.hpp"
#include "oracle.hpp"
#include "support.hpp"

namespace mathkg::query {
namespace {

TEST(QueryOracle, RandomQueriesMatchBruteForce) {
  auto stats = test::run_query_oracle(1200, 12345);
  EXPECT_EQ(stats.mismatches, 0u) << stats.first_mismatch;
  EXPECT_GE(stats.cases, 1000u);
  // The generator must exercise both outcomes and the NOT EXISTS path.
  EXPECT_GT(stats.nonempty, stats.cases / 10);
  EXPECT_GT(stats.with_not_exists, 200u);
}

TEST(QueryEval, FruitQueryOnSeed) {
  auto q = parse_query(test::fruit_query());
  auto start = std::chrono::steady_clock::now();
  auto table = evaluate(test::seed(), q);
  auto elapsed = std::chrono::steady_clock::now() - start;
  EXPECT_LT(elapsed, std::chrono::seconds(1));
  std::vector<std::array<std::string, 5>> want = {
      {"FreeFallModelAirDrag", "FreeFallDetermineVelocity", "ComputeEvolutionODE", "FreeFallEquationAirDrag", "RKim11"},
      {"FreeFallModelVacuum", "FreeFallDetermineVelocity", "ComputeEvolutionODE", "FreeFallEquationVacuum", "RK44kutta"},
      {"FreeFallModelVacuum", "FreeFallDetermineVelocity", "ComputeEvolutionODE", "FreeFallEquationVacuum", "RKex11"},
      {"FreeFallModelVacuum", "FreeFallDetermineVelocity", "ComputeEvolutionODE", "FreeFallEquationVacuum", "RKim11"},
  };
  ASSERT_EQ(table.rows.size(), want.size());
  for (size_t i = 0; i < want.size(); ++i) {
    const auto& r = table.rows[i];
    EXPECT_EQ(*r[0], Term(mmdb(want[i][0])));
    EXPECT_EQ(*r[1], Term(mmdb(want[i][1])));
    EXPECT_EQ(*r[2], Term(madb(want[i][2])));
    EXPECT_EQ(*r[3], Term(mmdb(want[i][3])));
    EXPECT_EQ(*r[4], Term(madb(want[i][4])));
  }
  EXPECT_TRUE(table.warnings.empty());
}

TEST(QueryEval, EmptyGraphGivesNoRows) {
  auto q = parse_query(test::fruit_query());
  EXPECT_TRUE(evaluate(Graph(), q).rows.empty());
}

TEST(QueryEval, UnboundProjectionWarns) {
  auto q = parse_query("SELECT ?x ?n WHERE { ?x ?p ?o FILTER(CONTAINS(STR(?n), \"a\")) }");
  Graph g = graph_from({{mmdb("a"), mmdb("p"), mmdb("b")}});
  auto table = evaluate(g, q);
  EXPECT_TRUE(table.rows.empty());  // the filter errors on the unbound variable
  ASSERT_EQ(table.warnings.size(), 1u);
  EXPECT_NE(table.warnings[0].find("?n"), std::string::npos);

  auto q2 = parse_query("SELECT ?x ?n WHERE { ?x ?p ?o FILTER NOT EXISTS { ?n ?p ?x } }");
  auto t2 = evaluate(g, q2);
  ASSERT_EQ(t2.rows.size(), 1u);
  EXPECT_FALSE(t2.rows[0][1].has_value());
  EXPECT_EQ(t2.warnings.size(), 1u);
}

TEST(QueryEval, Deterministic) {
  auto q = parse_query(test::fruit_query());
  auto a = evaluate(test::seed(), q);
  auto b = evaluate(test::seed(), q, {.execution = Execution::Serial});
  EXPECT_EQ(a.rows, b.rows);
}

// Adding a triple that can only satisfy a NOT EXISTS body removes rows.
TEST(QueryProperty, NotExistsIsMonotone) {
  std::mt19937_64 rng(5);
  test::Gen gen{std::mt19937_64(77)};
  auto q = parse_query(
      "PREFIX mmdb: <https://mardi4nfdi.de/mathmoddb#>\n"
      "SELECT ?x ?y WHERE { ?x mmdb:p ?y FILTER NOT EXISTS { ?y mmdb:q ?x } }");
  for (int round = 0; round < 300; ++round) {
    Graph g = gen.graph();
    auto before = evaluate(g, q);
    Triple extra{gen.iris[rng() % 3], mmdb("q"), gen.iris[rng() % 3]};
    g.insert(extra);
    auto after = evaluate(g, q);
    std::set<Row> b(before.rows.begin(), before.rows.end());
    for (const auto& r : after.rows) EXPECT_TRUE(b.count(r));
  }
}

TEST(QueryEval, StrGivesFullIri) {
  Graph g = graph_from({{mmdb("a"), mmdb("isStiff"), Literal::boolean(true)},
                        {mmdb("a"), rdfs_label(), Literal::string("A")}});
  auto q = parse_query(
      "PREFIX mmdb: <https://mardi4nfdi.de/mathmoddb#>\n"
      "SELECT ?p WHERE { mmdb:a ?p ?o FILTER(CONTAINS(STR(?p), STR(mmdb:))) }");
  auto table = evaluate(g, q);
  ASSERT_EQ(table.rows.size(), 1u);
  EXPECT_EQ(*table.rows[0][0], Term(mmdb("isStiff")));
}

}  // namespace
}  // namespace mathkg::query
