#include <gtest/gtest.h>

#include <random>

#include "mathkg/graph.hpp"
#include "support.hpp"

namespace mathkg {
namespace {

// Brute-force unification over the plain triple list.
std::vector<Binding> scan_match(const std::vector<Triple>& triples, const TriplePattern& p) {
  std::vector<Binding> out;
  for (const auto& t : triples) {
    Binding b;
    bool ok = true;
    auto unify = [&](const PatternSlot& slot, const Term& value) {
      if (!slot.is_variable()) {
        ok = ok && *slot.term == value;
        return;
      }
      auto [it, fresh] = b.emplace(slot.variable, value);
      ok = ok && (fresh || it->second == value);
    };
    unify(p.subject, t.subject);
    unify(p.predicate, t.predicate);
    unify(p.object, t.object);
    if (ok) out.push_back(b);
  }
  return out;
}

std::vector<Triple> random_triples(std::mt19937_64& rng, size_t n) {
  std::vector<Term> nodes = {mmdb("a"), mmdb("b"), mmdb("c"), madb("d")};
  std::vector<Iri> preds = {mmdb("p"), mmdb("q"), madb("r")};
  std::vector<Term> objects = nodes;
  objects.push_back(Literal::string("x"));
  objects.push_back(Literal::integer(4));
  std::vector<Triple> out;
  for (size_t i = 0; i < n; ++i) {
    out.push_back({nodes[rng() % nodes.size()].iri(), preds[rng() % preds.size()],
                   objects[rng() % objects.size()]});
  }
  return out;
}

PatternSlot random_slot(std::mt19937_64& rng, const std::vector<Term>& terms) {
  static const char* vars[] = {"x", "y", "z"};
  if (rng() % 2) return PatternSlot::var(vars[rng() % 3]);
  return PatternSlot::bound(terms[rng() % terms.size()]);
}

TEST(Graph, InsertIsIdempotent) {
  Graph g;
  Triple t{mmdb("Pomology"), mmdb("containsProblem"), mmdb("GravitationalEffectsOnFruit")};
  EXPECT_TRUE(g.insert(t));
  EXPECT_FALSE(g.insert(t));
  EXPECT_EQ(g.size(), 1u);
  auto found = g.match({PatternSlot::bound(mmdb("Pomology")), PatternSlot::var("p"), PatternSlot::var("o")});
  ASSERT_EQ(found.size(), 1u);
  EXPECT_EQ(found[0].at("o"), Term(mmdb("GravitationalEffectsOnFruit")));
}

TEST(Graph, LatexLiteralRetrievedVerbatim) {
  Graph g;
  g.insert({mmdb("FreeFallEquationVacuum"), mmdb("definingFormulation"), Literal::latex(R"(\dot{v}=g)")});
  auto o = g.objects(mmdb("FreeFallEquationVacuum"), mmdb("definingFormulation"));
  ASSERT_EQ(o.size(), 1u);
  EXPECT_EQ(o[0].literal().lexical(), R"(\dot{v}=g)");
  EXPECT_EQ(o[0].literal().datatype(), Datatype::Latex);
}

TEST(Graph, FullyBoundPattern) {
  Graph g;
  Triple t{mmdb("a"), mmdb("p"), mmdb("b")};
  g.insert(t);
  auto bound = [](const Triple& x) {
    return TriplePattern{PatternSlot::bound(x.subject), PatternSlot::bound(x.predicate),
                         PatternSlot::bound(x.object)};
  };
  auto hit = g.match(bound(t));
  ASSERT_EQ(hit.size(), 1u);
  EXPECT_TRUE(hit[0].empty());
  EXPECT_TRUE(g.match(bound({mmdb("a"), mmdb("p"), mmdb("c")})).empty());
}

TEST(Graph, SeedModelsMatch) {
  const auto& g = test::seed();
  auto models = g.match({PatternSlot::var("s"), PatternSlot::bound(rdf_type()),
                         PatternSlot::bound(class_iri(OntologyClass::MathematicalModel))});
  std::set<Term> found;
  for (const auto& b : models) found.insert(b.at("s"));
  EXPECT_TRUE(found.count(mmdb("FreeFallModelVacuum")));
  EXPECT_TRUE(found.count(mmdb("FreeFallModelAirDrag")));
}

TEST(Graph, SeedModeledByCountMatchesLinearScan) {
  const auto& g = test::seed();
  size_t scan = 0;
  for (const auto& t : g.triples()) scan += t.predicate == mmdb("modeledBy");
  Term p = mmdb("modeledBy");
  EXPECT_EQ(g.count(nullptr, &p, nullptr), scan);
  EXPECT_EQ(g.match({PatternSlot::var("s"), PatternSlot::bound(p), PatternSlot::var("o")}).size(), scan);
  EXPECT_GT(scan, 0u);
}

TEST(Graph, PropertiesOf) {
  const auto& g = test::seed();
  auto props = g.properties_of(mmdb("FreeFallEquationAirDrag"), ns::kMmdb);
  EXPECT_TRUE(props.count({mmdb("isStiff"), Term(Literal::boolean(true))}));
  EXPECT_TRUE(g.properties_of(mmdb("NoSuchThing"), ns::kMmdb).empty());

  for (const auto& subject : {mmdb("FreeFallEquationAirDrag"), mmdb("Pomology"), madb("RKim11")}) {
    PropertySet oracle;
    for (const auto& t : g.triples()) {
      if (t.subject == subject && t.predicate.starts_with(ns::kMmdb)) oracle.insert({t.predicate, t.object});
    }
    EXPECT_EQ(g.properties_of(subject, ns::kMmdb), oracle);
  }
}

TEST(GraphProperty, MatchEqualsLinearScan) {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 500; ++round) {
    auto triples = random_triples(rng, rng() % 31);
    Graph g = graph_from(triples);
    std::vector<Triple> unique(g.triples().begin(), g.triples().end());
    std::vector<Term> terms = {mmdb("a"), mmdb("b"), mmdb("p"), madb("r"), Literal::integer(4)};
    for (int k = 0; k < 10; ++k) {
      TriplePattern p{random_slot(rng, terms), random_slot(rng, terms), random_slot(rng, terms)};
      if (!p.subject.is_variable() && !p.subject.term->is_iri()) p.subject = PatternSlot::var("x");
      if (!p.predicate.is_variable() && !p.predicate.term->is_iri()) p.predicate = PatternSlot::var("y");
      auto got = g.match(p);
      auto want = scan_match(unique, p);
      std::sort(got.begin(), got.end());
      std::sort(want.begin(), want.end());
      ASSERT_EQ(got, want) << "round " << round;
    }
  }
}

TEST(GraphProperty, IndexesAgree) {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 200; ++round) {
    Graph g = graph_from(random_triples(rng, rng() % 40));
    auto removals = random_triples(rng, 5);
    for (const auto& t : removals) g.remove(t);
    auto sizes = g.index_sizes();
    EXPECT_EQ(sizes.spo, sizes.pos);
    EXPECT_EQ(sizes.spo, sizes.osp);
    std::vector<Triple> spo(g.triples().begin(), g.triples().end());
    auto pos = g.dump_pos();
    auto osp = g.dump_osp();
    std::sort(pos.begin(), pos.end());
    std::sort(osp.begin(), osp.end());
    EXPECT_EQ(spo, pos);
    EXPECT_EQ(spo, osp);
  }
}

TEST(GraphProperty, RemoveUndoesInsert) {
  std::mt19937_64 rng(3);
  for (int round = 0; round < 200; ++round) {
    Graph g = graph_from(random_triples(rng, rng() % 20));
    Graph before = g;
    for (const auto& t : random_triples(rng, 3)) {
      if (g.contains(t)) continue;
      g.insert(t);
      g.remove(t);
      EXPECT_EQ(g, before);
    }
  }
}

TEST(Graph, ScanCanStopEarly) {
  Graph g = graph_from({{mmdb("a"), mmdb("p"), mmdb("b")}, {mmdb("a"), mmdb("p"), mmdb("c")}});
  int calls = 0;
  g.scan(nullptr, nullptr, nullptr, [&](const Triple&) { return ++calls < 1; });
  EXPECT_EQ(calls, 1);
}

}  // namespace
}  // namespace mathkg
