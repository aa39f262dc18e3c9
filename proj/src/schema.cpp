#include "mathkg/schema.hpp"

#include <algorithm>
#include <cctype>

namespace mathkg {

namespace {

using C = OntologyClass;

struct ClassInfo {
  std::string_view name;
  std::string_view display;
  bool algo;
};

constexpr std::array<ClassInfo, kClassCount> kClassInfo = {{
    {"ResearchField", "Research Field", false},
    {"ResearchProblem", "Research Problem", false},
    {"MathematicalModel", "Mathematical Model", false},
    {"MathematicalFormulation", "Mathematical Formulation", false},
    {"Quantity", "Quantity", false},
    {"QuantityKind", "Quantity Kind", false},
    {"ComputationalTask", "Computational Task", false},
    {"AlgorithmicTask", "Algorithmic Task", true},
    {"Algorithm", "Algorithm", true},
    {"Software", "Software", true},
    {"Benchmark", "Benchmark", true},
    {"Publication", "Publication", true},
}};

const ClassInfo& info(OntologyClass c) { return kClassInfo[static_cast<size_t>(c)]; }

std::vector<std::string_view> split_words(std::string_view text) {
  std::vector<std::string_view> words;
  size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && !std::isalnum(static_cast<unsigned char>(text[i]))) ++i;
    size_t start = i;
    while (i < text.size() && std::isalnum(static_cast<unsigned char>(text[i]))) ++i;
    if (i > start) words.push_back(text.substr(start, i - start));
  }
  return words;
}

std::string normalize_display(std::string_view s) {
  std::string out;
  for (auto w : split_words(s)) {
    if (!out.empty()) out += ' ';
    for (char c : w) out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

}  // namespace

std::string_view class_name(OntologyClass c) noexcept { return info(c).name; }
std::string_view class_display_name(OntologyClass c) noexcept { return info(c).display; }
bool is_mathalgodb_class(OntologyClass c) noexcept { return info(c).algo; }

Iri class_iri(OntologyClass c) {
  return is_mathalgodb_class(c) ? madb(class_name(c)) : mmdb(class_name(c));
}

std::optional<OntologyClass> class_from_iri(const Iri& iri) noexcept {
  for (auto c : kAllClasses) {
    std::string_view ns = is_mathalgodb_class(c) ? ns::kMadb : ns::kMmdb;
    std::string_view s = iri.str();
    if (s.size() == ns.size() + class_name(c).size() && s.starts_with(ns) &&
        s.substr(ns.size()) == class_name(c)) {
      return c;
    }
  }
  return std::nullopt;
}

std::optional<OntologyClass> class_from_name(std::string_view name) noexcept {
  for (auto c : kAllClasses) {
    if (class_name(c) == name) return c;
  }
  return std::nullopt;
}

bool RelationSpec::domain_allows(OntologyClass c) const {
  return std::find(domain.begin(), domain.end(), c) != domain.end();
}
bool RelationSpec::range_allows(OntologyClass c) const {
  return std::find(range.begin(), range.end(), c) != range.end();
}

std::string lower_camel(std::string_view display_name) {
  std::string out;
  bool first = true;
  for (auto w : split_words(display_name)) {
    for (size_t i = 0; i < w.size(); ++i) {
      auto c = static_cast<unsigned char>(w[i]);
      if (i == 0) {
        out += static_cast<char>(first ? std::tolower(c) : std::toupper(c));
      } else {
        out += static_cast<char>(c);
      }
    }
    first = false;
  }
  return out;
}

std::string upper_camel(std::string_view display_name) {
  std::string out;
  for (auto w : split_words(display_name)) {
    out += static_cast<char>(std::toupper(static_cast<unsigned char>(w[0])));
    out.append(w.substr(1));
  }
  return out;
}

OntologySchema::OntologySchema() {
  for (auto c : kAllClasses) {
    classes_.push_back({c, class_iri(c),
                        std::string(is_mathalgodb_class(c) ? ns::kMadb : ns::kMmdb)});
  }

  auto make = [](bool algo, std::string_view display) {
    auto local = lower_camel(display);
    return algo ? madb(local) : mmdb(local);
  };
  auto pair = [&](bool algo, std::string_view fwd, std::string_view inv,
                  std::vector<C> domain, std::vector<C> range,
                  RelationFamily family = RelationFamily::Plain, std::string role = {}) {
    Iri f = make(algo, fwd);
    Iri i = make(algo, inv);
    relations_.push_back({f, i, domain, range, std::string(fwd), family, role});
    relations_.push_back({i, f, std::move(range), std::move(domain), std::string(inv), family,
                          std::move(role)});
  };
  auto single = [&](bool algo, std::string_view fwd, std::vector<C> domain, std::vector<C> range,
                    RelationFamily family, std::string role = {}) {
    relations_.push_back(
        {make(algo, fwd), std::nullopt, std::move(domain), std::move(range), std::string(fwd),
         family, std::move(role)});
  };

  const std::vector<C> quantities = {C::Quantity, C::QuantityKind};

  pair(false, "contains problem", "contained in field", {C::ResearchField}, {C::ResearchProblem});
  pair(false, "modeled by", "models", {C::ResearchProblem}, {C::MathematicalModel});
  pair(false, "applied by task", "applies model", {C::MathematicalModel}, {C::ComputationalTask});
  pair(false, "contains quantity", "contained in formulation", {C::MathematicalFormulation},
       quantities);
  pair(false, "is kind of", "has specialization", {C::Quantity}, {C::QuantityKind});

  for (std::string role : {"formulation", "assumption", "definition", "initial condition",
                           "final condition", "boundary condition", "constraint condition"}) {
    std::vector<C> domain = {C::MathematicalModel, C::MathematicalFormulation,
                             C::ComputationalTask};
    if (role == "formulation") domain.push_back(C::AlgorithmicTask);
    pair(false, "contains " + role, "contained as " + role + " in", std::move(domain),
         {C::MathematicalFormulation}, RelationFamily::FormulationRole, role);
  }
  for (std::string role : {"input", "output", "parameter", "constant", "objective"}) {
    pair(false, "contains " + role, "contained as " + role + " in", {C::ComputationalTask},
         quantities, RelationFamily::QuantityRole, role);
  }

  {
    Iri eq = mmdb("equivalentTo");
    relations_.push_back({eq, eq, {C::ComputationalTask}, {C::AlgorithmicTask}, "equivalent to",
                          RelationFamily::Plain, {}});
  }

  pair(true, "solves", "solved by", {C::Algorithm}, {C::AlgorithmicTask});
  pair(true, "implemented by", "implements", {C::Algorithm}, {C::Software});
  pair(true, "tested by", "tests", {C::Software}, {C::Benchmark});
  pair(true, "instantiated by", "instantiates", {C::AlgorithmicTask}, {C::Benchmark});

  for (std::string_view rel : {"requires", "recommends", "precludes"}) {
    single(true, rel, {C::Algorithm}, {C::MathematicalFormulation}, RelationFamily::Selection,
           std::string(rel));
  }

  const std::vector<C> all(kAllClasses.begin(), kAllClasses.end());
  for (std::string role : {"used", "documented", "invented", "surveyed", "studied"}) {
    single(true, role + " in", all, {C::Publication}, RelationFamily::PublicationRole, role);
  }

  for (size_t i = 0; i < relations_.size(); ++i) by_iri_.emplace(relations_[i].forward.str(), i);
}

const RelationSpec* OntologySchema::find(const Iri& predicate) const noexcept {
  auto it = by_iri_.find(predicate.str());
  return it == by_iri_.end() ? nullptr : &relations_[it->second];
}

const RelationSpec* OntologySchema::find_by_display_name(std::string_view name) const noexcept {
  auto wanted = normalize_display(name);
  for (const auto& r : relations_) {
    if (normalize_display(r.display_name) == wanted) return &r;
  }
  return nullptr;
}

std::optional<Iri> OntologySchema::inverse_of(const Iri& predicate) const noexcept {
  if (const auto* r = find(predicate)) return r->inverse;
  return std::nullopt;
}

const OntologySchema& schema() {
  static const OntologySchema instance;
  return instance;
}

namespace props {
Iri defining_formulation() { return mmdb("definingFormulation"); }
Iri symbol() { return mmdb("symbol"); }
Iri tensor_order() { return mmdb("tensorOrder"); }
Iri qudt_id() { return mmdb("qudtId"); }
Iri wikidata_id() { return mmdb("wikidataId"); }
Iri msc_id() { return mmdb("mscId"); }
Iri dfg_id() { return mmdb("dfgId"); }
Iri physh_id() { return mmdb("physhId"); }
Iri is_kind_of() { return mmdb("isKindOf"); }
Iri contains_quantity() { return mmdb("containsQuantity"); }
}  // namespace props

}  // namespace mathkg
