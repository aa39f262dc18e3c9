#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mathkg/term.hpp"

namespace mathkg {

enum class OntologyClass {
  ResearchField,
  ResearchProblem,
  MathematicalModel,
  MathematicalFormulation,
  Quantity,
  QuantityKind,
  ComputationalTask,
  AlgorithmicTask,
  Algorithm,
  Software,
  Benchmark,
  Publication,
};

inline constexpr size_t kClassCount = 12;
inline constexpr std::array<OntologyClass, kClassCount> kAllClasses = {
    OntologyClass::ResearchField,     OntologyClass::ResearchProblem,
    OntologyClass::MathematicalModel, OntologyClass::MathematicalFormulation,
    OntologyClass::Quantity,          OntologyClass::QuantityKind,
    OntologyClass::ComputationalTask, OntologyClass::AlgorithmicTask,
    OntologyClass::Algorithm,         OntologyClass::Software,
    OntologyClass::Benchmark,         OntologyClass::Publication,
};

std::string_view class_name(OntologyClass c) noexcept;
// "Mathematical Model" style heading.
std::string_view class_display_name(OntologyClass c) noexcept;
bool is_mathalgodb_class(OntologyClass c) noexcept;
Iri class_iri(OntologyClass c);
std::optional<OntologyClass> class_from_iri(const Iri& iri) noexcept;
std::optional<OntologyClass> class_from_name(std::string_view name) noexcept;

enum class RelationFamily {
  Plain,
  FormulationRole,  // contains formulation / assumption / ... ("**")
  QuantityRole,     // contains input / output / ... ("***")
  PublicationRole,  // used in / documented in / ... ("*")
  Selection,        // requires / recommends / precludes
};

struct RelationSpec {
  Iri forward;
  std::optional<Iri> inverse;  // equal to `forward` for symmetric relations
  std::vector<OntologyClass> domain;
  std::vector<OntologyClass> range;
  std::string display_name;  // e.g. "modeled by"
  RelationFamily family = RelationFamily::Plain;
  std::string role;  // role qualifier for the role families, e.g. "boundary condition"

  bool symmetric() const { return inverse && *inverse == forward; }
  bool domain_allows(OntologyClass c) const;
  bool range_allows(OntologyClass c) const;
};

struct ClassSpec {
  OntologyClass cls;
  Iri iri;
  std::string namespace_iri;
};

// The merged model/algorithm ontology. Immutable; obtain through schema().
class OntologySchema {
 public:
  const std::vector<ClassSpec>& classes() const noexcept { return classes_; }
  // Every direction is its own entry: both modeledBy and models are listed.
  const std::vector<RelationSpec>& relations() const noexcept { return relations_; }

  const RelationSpec* find(const Iri& predicate) const noexcept;
  const RelationSpec* find_by_display_name(std::string_view name) const noexcept;
  std::optional<Iri> inverse_of(const Iri& predicate) const noexcept;
  bool is_relation(const Iri& predicate) const noexcept { return find(predicate) != nullptr; }

 private:
  friend const OntologySchema& schema();
  OntologySchema();

  std::vector<ClassSpec> classes_;
  std::vector<RelationSpec> relations_;
  std::unordered_map<std::string, size_t> by_iri_;
};

const OntologySchema& schema();

// Literal-valued predicates with fixed meaning.
namespace props {
Iri defining_formulation();  // latex-expression
Iri symbol();                // latex-expression
Iri tensor_order();          // string: scalar | vector | matrix | higher-order tensor
Iri qudt_id();
Iri wikidata_id();
Iri msc_id();
Iri dfg_id();
Iri physh_id();
Iri is_kind_of();
Iri contains_quantity();
}  // namespace props

// "contains problem" -> "containsProblem"
std::string lower_camel(std::string_view display_name);
// "Free Fall with Air Drag" -> "FreeFallWithAirDrag"
std::string upper_camel(std::string_view display_name);

}  // namespace mathkg
