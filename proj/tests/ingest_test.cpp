#include <gtest/gtest.h>

#include <filesystem>

#include "json.hpp"
#include "mathkg/ingest.hpp"
#include "mathkg/turtle.hpp"
#include "mathkg/validator.hpp"
#include "support.hpp"

namespace mathkg {
namespace {

std::vector<std::filesystem::path> template_files() {
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(test::templates_dir())) {
    if (e.path().string().ends_with(".model.md")) out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

TemplateDraft all_templates() {
  std::vector<TemplateDraft> drafts;
  for (const auto& f : template_files()) drafts.push_back(parse_template(read_text(f), f.filename().string()));
  return combine_drafts(drafts);
}

TEST(Template, SingleModel) {
  auto d = parse_template("## Mathematical Model\n- name: Free Fall with Air Drag\n");
  ASSERT_EQ(d.entities.size(), 1u);
  EXPECT_EQ(d.entities[0].cls, OntologyClass::MathematicalModel);
  EXPECT_EQ(d.entities[0].iri, mmdb("FreeFallWithAirDrag"));
  EXPECT_EQ(d.proposed_iris.at("Free Fall with Air Drag"), mmdb("FreeFallWithAirDrag"));
  auto triples = draft_to_triples(d);
  EXPECT_GE(triples.size(), 2u);
}

TEST(Template, EmptyIsError) {
  try {
    parse_template("");
    FAIL();
  } catch (const IngestError& e) {
    EXPECT_EQ(e.kind(), IngestError::Kind::EmptyTemplate);
  }
  EXPECT_THROW(parse_template("# Title\n\nJust prose.\n"), IngestError);
}

TEST(Template, QuantityKindLink) {
  auto d = parse_template(
      "## Quantities\n- name: Gravitational Acceleration\n- symbol: g\n- kind: acceleration\n\n"
      "## Quantity Kinds\n- name: Acceleration\n");
  ASSERT_EQ(d.entities.size(), 2u);
  Graph g = graph_from(draft_to_triples(d));
  EXPECT_TRUE(g.contains({mmdb("GravitationalAcceleration"), mmdb("isKindOf"), mmdb("Acceleration")}));
  EXPECT_TRUE(g.contains({mmdb("GravitationalAcceleration"), props::symbol(), Literal::latex("g")}));
}

TEST(Template, UnknownHeadingIsWarning) {
  auto d = parse_template("## Research Field\n- name: Pomology\n\n## Musings\n- name: whatever\n");
  EXPECT_EQ(d.entities.size(), 1u);
  ASSERT_EQ(d.warnings.size(), 1u);
  EXPECT_NE(d.warnings[0].find("Musings"), std::string::npos);
}

TEST(Template, LatexFenceIsVerbatim) {
  auto d = parse_template(
      "## Mathematical Formulation\n- name: Drag\n- formula:\n```latex\n\\dot{v}=g-\\frac{\\rho C_{D}Av^2}{2m}\n```\n");
  Graph g = graph_from(draft_to_triples(d));
  auto f = g.objects(mmdb("Drag"), props::defining_formulation());
  ASSERT_EQ(f.size(), 1u);
  EXPECT_EQ(f[0].literal().lexical(), "\\dot{v}=g-\\frac{\\rho C_{D}Av^2}{2m}");
}

TEST(Template, UnresolvableReference) {
  auto d = parse_template("## Mathematical Model\n- name: M\n- contains formulation: GhostEquation\n");
  try {
    draft_to_triples(d);
    FAIL();
  } catch (const IngestError& e) {
    EXPECT_EQ(e.kind(), IngestError::Kind::UnresolvableReference);
    EXPECT_EQ(e.line(), 3);
  }
}

TEST(Template, ReferencesResolveAgainstContextGraph) {
  auto d = parse_template("## Research Problem\n- name: Apple Bruising\n- modeled by: Free Fall with Air Drag\n");
  auto triples = draft_to_triples(d, &test::seed());
  Graph g = graph_from(triples);
  EXPECT_TRUE(g.contains({mmdb("AppleBruising"), mmdb("modeledBy"), mmdb("FreeFallModelAirDrag")}));
}

TEST(Template, RelationsAndPropertiesSections) {
  auto d = parse_template(
      "## Research Field\n- name: A\n\n## Research Problem\n- name: B\n\n"
      "## Relations\n- A | contains problem | B\n\n## Properties\n- B | is open | true\n");
  Graph g = graph_from(draft_to_triples(d));
  EXPECT_TRUE(g.contains({mmdb("A"), mmdb("containsProblem"), mmdb("B")}));
  EXPECT_TRUE(g.contains({mmdb("B"), mmdb("isOpen"), Literal::boolean(true)}));
}

TEST(Template, GeneratedTriplesValidateAfterRepair) {
  auto free_fall = read_text(test::templates_dir() / "free_fall.model.md");
  auto kinds = read_text(test::templates_dir() / "quantity_kinds.model.md");
  auto d = combine_drafts({parse_template(free_fall, "free_fall"), parse_template(kinds, "kinds")});
  Graph g = graph_from(draft_to_triples(d));
  repair_inverses(g);
  EXPECT_EQ(validate(g).errors(), 0u);
}

TEST(Merge, SameTemplateTwiceAddsNothing) {
  auto triples = draft_to_triples(all_templates());
  Graph g;
  auto first = merge(g, triples, MergeMode::Additive);
  EXPECT_EQ(first.added, triples.size());
  auto second = merge(g, triples, MergeMode::Additive);
  EXPECT_EQ(second.added, 0u);
  EXPECT_EQ(second.skipped, triples.size());
  EXPECT_EQ(second.added + second.skipped, second.incoming);
}

TEST(Merge, StrictConflictLeavesSubjectUntouched) {
  Graph g = test::seed();
  Graph before = g;
  auto d = parse_template("## Research Field\n- name: Fruit Science\n- id: Pomology\n- description: new text\n");
  auto report = merge(g, draft_to_triples(d), MergeMode::Strict);
  ASSERT_EQ(report.conflicts.size(), 1u);
  EXPECT_EQ(report.conflicts[0].subject, mmdb("Pomology"));
  EXPECT_EQ(report.conflicts[0].predicate, rdfs_label());
  EXPECT_EQ(report.conflicts[0].existing, Term(Literal::string("Pomology")));
  EXPECT_EQ(report.added, 0u);
  EXPECT_EQ(g, before);

  auto additive = merge(g, draft_to_triples(d), MergeMode::Additive);
  EXPECT_TRUE(additive.conflicts.empty());
  EXPECT_EQ(additive.added, 2u);
}

TEST(Merge, ReportJson) {
  Graph g;
  auto report = merge(g, {{mmdb("a"), rdfs_label(), Literal::string("A")}}, MergeMode::Additive);
  auto j = nlohmann::json::parse(merge_report_to_json(report));
  EXPECT_EQ(j["added"], 1);
  EXPECT_EQ(j["skipped"], 0);
  EXPECT_TRUE(j["conflicts"].empty());
}

TEST(IngestLoop, TemplatesReproduceSeed) {
  Graph g;
  merge(g, draft_to_triples(all_templates()), MergeMode::Additive);
  repair_inverses(g);
  EXPECT_EQ(validate(g).errors(), 0u);
  EXPECT_EQ(g, test::seed());
}

TEST(IngestLoop, Deterministic) {
  auto a = draft_to_triples(all_templates());
  auto b = draft_to_triples(all_templates());
  EXPECT_EQ(a, b);
  EXPECT_EQ(turtle::serialize(graph_from(a)), turtle::serialize(graph_from(b)));
}

}  // namespace
}  // namespace mathkg
