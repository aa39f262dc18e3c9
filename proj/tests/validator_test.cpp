#include <gtest/gtest.h>

#include <random>

#include "json.hpp"
#include "mathkg/synthetic.hpp"
#include "mathkg/validator.hpp"
#include "support.hpp"

namespace mathkg {
namespace {

Triple type(const Iri& s, OntologyClass c) { return {s, rdf_type(), class_iri(c)}; }

std::vector<std::string> codes(const ValidationReport& r) {
  std::vector<std::string> out;
  for (const auto& f : r.findings) out.push_back(f.code);
  return out;
}

bool has(const ValidationReport& r, const std::string& code, const Iri& subject) {
  return std::any_of(r.findings.begin(), r.findings.end(),
                     [&](const Finding& f) { return f.code == code && f.subject == subject; });
}

TEST(Validator, SeedIsClean) {
  auto report = validate(test::seed());
  EXPECT_EQ(report.errors(), 0u) << report_to_text(report, test::seed().prefixes());
  EXPECT_EQ(report.warnings(), 0u) << report_to_text(report, test::seed().prefixes());
}

TEST(Validator, RangeViolation) {
  Graph g = graph_from({type(mmdb("A"), OntologyClass::ResearchProblem), {mmdb("A"), mmdb("modeledBy"), mmdb("B")},
                        {mmdb("B"), mmdb("models"), mmdb("A")}});
  auto report = validate(g);
  EXPECT_TRUE(has(report, "V1", mmdb("A")));
  EXPECT_EQ(report.findings[0].severity, Severity::Error);
}

TEST(Validator, DomainViolationAndLiteralObject) {
  Graph g = graph_from({type(mmdb("A"), OntologyClass::Quantity), type(mmdb("B"), OntologyClass::MathematicalModel),
                        {mmdb("A"), mmdb("modeledBy"), mmdb("B")}, {mmdb("B"), mmdb("models"), mmdb("A")},
                        {mmdb("B"), mmdb("containsFormulation"), Literal::string("x")}});
  auto report = validate(g);
  EXPECT_TRUE(has(report, "V1", mmdb("A")));
  EXPECT_TRUE(has(report, "V1", mmdb("B")));
}

TEST(Validator, VoltageIdsAreWellFormed) {
  Graph g = graph_from({type(mmdb("Voltage"), OntologyClass::QuantityKind),
                        {mmdb("Voltage"), props::qudt_id(),
                         Literal::external_id("https://qudt.org/vocab/quantitykind/Voltage")},
                        {mmdb("Voltage"), props::wikidata_id(), Literal::external_id("Q25428")}});
  EXPECT_TRUE(validate(g).clean());
}

TEST(Validator, ExternalIdShapes) {
  Graph g = graph_from({type(mmdb("K"), OntologyClass::QuantityKind),
                        {mmdb("K"), props::qudt_id(), Literal::external_id("http://example.org/Voltage")},
                        {mmdb("K"), props::wikidata_id(), Literal::external_id("25428")},
                        type(madb("Alg"), OntologyClass::Algorithm),
                        {madb("Alg"), props::msc_id(), Literal::external_id("65-01")},
                        {madb("Alg"), props::dfg_id(), Literal::external_id("")}});
  auto report = validate(g);
  EXPECT_EQ(codes(report), std::vector<std::string>(4, "V5"));
  for (auto ok : {"65", "65L05", "44A12"}) {
    Graph h = graph_from({type(madb("Alg"), OntologyClass::Algorithm),
                          {madb("Alg"), props::msc_id(), Literal::external_id(ok)}});
    EXPECT_TRUE(validate(h).clean()) << ok;
  }
}

TEST(Validator, QuantityChecks) {
  Graph g = graph_from({type(mmdb("F"), OntologyClass::MathematicalFormulation),
                        {mmdb("F"), props::contains_quantity(), mmdb("Ghost")},
                        {mmdb("F"), props::contains_quantity(), mmdb("Q")},
                        type(mmdb("Q"), OntologyClass::Quantity),
                        {mmdb("Q"), mmdb("containedInFormulation"), mmdb("F")}});
  auto report = validate(g);
  EXPECT_TRUE(has(report, "V3", mmdb("F")));
  EXPECT_TRUE(has(report, "V4", mmdb("Q")));
}

TEST(Validator, TaskWithoutEquivalent) {
  Graph g = graph_from({type(mmdb("T"), OntologyClass::ComputationalTask)});
  EXPECT_EQ(codes(validate(g)), std::vector<std::string>{"V6"});
}

TEST(Validator, SelectionTargetMustBeFormulation) {
  Graph g = graph_from({type(madb("A"), OntologyClass::Algorithm), type(mmdb("M"), OntologyClass::MathematicalModel),
                        {madb("A"), madb("precludes"), mmdb("M")}});
  auto report = validate(g);
  EXPECT_TRUE(has(report, "V7", madb("A")));
  EXPECT_GT(report.errors(), 0u);
}

TEST(Validator, FormulaWithoutQuantities) {
  Graph g = graph_from({type(mmdb("F"), OntologyClass::MathematicalFormulation),
                        {mmdb("F"), props::defining_formulation(), Literal::latex("\\dot{v}=g")}});
  EXPECT_EQ(codes(validate(g)), std::vector<std::string>{"V8"});
}

TEST(Validator, UnhousedSymbols) {
  Graph g = graph_from({type(mmdb("F"), OntologyClass::MathematicalFormulation),
                        {mmdb("F"), props::defining_formulation(), Literal::latex("\\dot{v}=g")},
                        {mmdb("F"), props::contains_quantity(), mmdb("V")},
                        type(mmdb("V"), OntologyClass::Quantity),
                        {mmdb("V"), props::symbol(), Literal::latex("v")},
                        {mmdb("V"), mmdb("containedInFormulation"), mmdb("F")},
                        {mmdb("V"), props::is_kind_of(), mmdb("K")},
                        type(mmdb("K"), OntologyClass::QuantityKind),
                        {mmdb("K"), mmdb("hasSpecialization"), mmdb("V")}});
  auto report = validate(g);
  ASSERT_EQ(codes(report), std::vector<std::string>{"V9"});
  EXPECT_NE(report.findings[0].message.find("g"), std::string::npos);
}

TEST(Validator, LatexSymbols) {
  EXPECT_EQ(latex_symbols("\\dot{v}=g-\\frac{\\rho C_{D}Av^2}{2m}"),
            (std::vector<std::string>{"A", "C_{D}", "\\rho", "g", "m", "v"}));
  EXPECT_EQ(latex_symbols("\\frac{d s_m(t)}{dt}"), (std::vector<std::string>{"s_m", "t"}));
  EXPECT_EQ(latex_symbols("g=\\mathrm{const}"), (std::vector<std::string>{"g"}));
  EXPECT_EQ(latex_symbols("\\sum_{n=1}^{N_R} G_{m,n} i_n"), (std::vector<std::string>{"G_{m,n}", "N_R", "i_n"}));
  EXPECT_EQ(latex_symbols("\\alpha_0 + d_x"), (std::vector<std::string>{"\\alpha_0", "d_x"}));
}

TEST(Validator, SymbolKeys) {
  std::vector<std::pair<std::string, std::string>> cases = {
      {"v", "v"},         {"C_{D}", "C_D"}, {"C_D", "C_D"},   {"s_m", "s"},         {"i_n", "i"},
      {"G_{m,n}", "G"},   {"N_R", "N_R"},   {"P_m", "P"},     {"\\alpha_0", "\\alpha_0"}, {"x_{ij}", "x_ij"},
      {"x_{i,j}", "x"},   {"V_m", "V"},     {"T_{max}", "T_max"},
  };
  for (const auto& [symbol, key] : cases) EXPECT_EQ(symbol_key(symbol), key) << symbol;
}

TEST(Validator, SeedSymbolsAllHoused) {
  const auto& g = test::seed();
  std::set<std::string> all;
  for (const auto& f : g.instances_of(OntologyClass::MathematicalFormulation)) {
    std::set<std::string> housed;
    for (const auto& q : g.objects(f, props::contains_quantity())) {
      for (const auto& s : g.objects(q.iri(), props::symbol())) {
        for (const auto& x : latex_symbols(s.lexical())) housed.insert(symbol_key(x));
      }
    }
    for (const auto& e : g.objects(f, props::defining_formulation())) {
      for (const auto& s : latex_symbols(e.lexical())) {
        EXPECT_TRUE(housed.count(symbol_key(s))) << f.str() << " " << s;
        all.insert(symbol_key(s));
      }
    }
  }
  for (auto s : {"v", "g", "\\rho", "C_D", "A", "m", "s_m", "i_m", "\\alpha", "G", "P_m", "N_R", "t", "x", "b"}) {
    EXPECT_TRUE(all.count(symbol_key(s))) << s;
  }
}

TEST(Repair, AddsMissingInverse) {
  Graph g = graph_from({type(mmdb("P"), OntologyClass::ResearchProblem), type(mmdb("M"), OntologyClass::MathematicalModel),
                        {mmdb("P"), mmdb("modeledBy"), mmdb("M")}});
  EXPECT_TRUE(has(validate(g), "V2", mmdb("P")));
  EXPECT_EQ(repair_inverses(g), 1u);
  EXPECT_TRUE(g.contains({mmdb("M"), mmdb("models"), mmdb("P")}));
  EXPECT_TRUE(validate(g).clean());
  EXPECT_EQ(repair_inverses(g), 0u);
}

TEST(Repair, SymmetricRelation) {
  Graph g = graph_from({type(mmdb("T"), OntologyClass::ComputationalTask), type(madb("U"), OntologyClass::AlgorithmicTask),
                        {mmdb("T"), mmdb("equivalentTo"), madb("U")}});
  EXPECT_EQ(repair_inverses(g), 1u);
  EXPECT_TRUE(g.contains({madb("U"), mmdb("equivalentTo"), mmdb("T")}));
}

Graph random_relation_graph(std::mt19937_64& rng) {
  std::vector<Iri> entities;
  Graph g;
  for (int i = 0; i < 12; ++i) {
    auto c = kAllClasses[rng() % kClassCount];
    Iri e = mmdb("E" + std::to_string(i));
    g.insert(type(e, c));
    entities.push_back(e);
  }
  const auto& rels = schema().relations();
  for (size_t n = rng() % 30; n > 0; --n) {
    g.insert({entities[rng() % entities.size()], rels[rng() % rels.size()].forward, entities[rng() % entities.size()]});
  }
  return g;
}

TEST(RepairProperty, IdempotentAndClosesV2) {
  std::mt19937_64 rng(42);
  for (int round = 0; round < 300; ++round) {
    Graph g = random_relation_graph(rng);
    Graph once = g;
    repair_inverses(once);
    Graph twice = once;
    EXPECT_EQ(repair_inverses(twice), 0u);
    EXPECT_EQ(twice, once);
    for (const auto& f : validate(once).findings) EXPECT_NE(f.code, "V2");
    for (const auto& t : g.triples()) EXPECT_TRUE(once.contains(t));
    for (const auto& t : once.triples()) {
      auto inv = schema().inverse_of(t.predicate);
      if (inv) {
        EXPECT_TRUE(once.contains({t.object.iri(), *inv, t.subject}));
      }
    }
  }
}

TEST(ValidatorProperty, SerialEqualsParallelAndPure) {
  std::mt19937_64 rng(8);
  for (int round = 0; round < 200; ++round) {
    Graph g = random_relation_graph(rng);
    Graph copy = g;
    auto a = validate(g, Execution::Serial);
    auto b = validate(g, Execution::Parallel);
    EXPECT_EQ(a.findings, b.findings);
    EXPECT_TRUE(std::is_sorted(a.findings.begin(), a.findings.end()));
    EXPECT_EQ(g, copy);
  }
  Graph big = synthetic_graph(2000, 20000, 3);
  EXPECT_EQ(validate(big, Execution::Serial).findings, validate(big, Execution::Parallel).findings);
}

TEST(Validator, ReportSerializations) {
  Graph g = graph_from({type(mmdb("T"), OntologyClass::ComputationalTask)});
  auto report = validate(g);
  auto j = nlohmann::json::parse(report_to_json(report, g.prefixes()));
  EXPECT_EQ(j["warnings"], 1);
  EXPECT_EQ(j["errors"], 0);
  EXPECT_EQ(j["findings"][0]["code"], "V6");
  EXPECT_NE(report_to_text(report, g.prefixes()).find("V6"), std::string::npos);
}

}  // namespace
}  // namespace mathkg
