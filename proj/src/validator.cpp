#include "mathkg/validator.hpp"

#include <algorithm>
#include <regex>
#include <set>

#include "json.hpp"

namespace mathkg {

namespace {

bool any_type_allowed(const std::vector<OntologyClass>& types,
                      const std::vector<OntologyClass>& allowed) {
  return std::any_of(types.begin(), types.end(), [&](OntologyClass c) {
    return std::find(allowed.begin(), allowed.end(), c) != allowed.end();
  });
}

std::string class_list(const std::vector<OntologyClass>& classes) {
  std::string out;
  for (auto c : classes) {
    if (!out.empty()) out += "|";
    out += class_name(c);
  }
  return out.empty() ? "untyped" : out;
}

bool is_greek(std::string_view name) {
  static const std::set<std::string_view> greek = {
      "alpha",   "beta",    "gamma", "delta",  "epsilon", "varepsilon", "zeta",   "eta",
      "theta",   "vartheta", "iota", "kappa",  "lambda",  "mu",         "nu",     "xi",
      "pi",      "varpi",   "rho",   "varrho", "sigma",   "varsigma",   "tau",    "upsilon",
      "phi",     "varphi",  "chi",   "psi",    "omega",   "Gamma",      "Delta",  "Theta",
      "Lambda",  "Xi",      "Pi",    "Sigma",  "Upsilon", "Phi",        "Psi",    "Omega"};
  return greek.count(name) > 0;
}

bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

// Index just past the balanced group starting at `i` (which holds '{').
size_t skip_group(std::string_view s, size_t i) {
  int depth = 0;
  for (; i < s.size(); ++i) {
    if (s[i] == '\\') {
      ++i;
      continue;
    }
    if (s[i] == '{') ++depth;
    if (s[i] == '}' && --depth == 0) return i + 1;
  }
  return s.size();
}

// Index just past one token (a group, a command or a character) at `i`.
size_t skip_token(std::string_view s, size_t i) {
  while (i < s.size() && s[i] == ' ') ++i;
  if (i >= s.size()) return i;
  if (s[i] == '{') return skip_group(s, i);
  if (s[i] == '\\') {
    size_t j = i + 1;
    while (j < s.size() && is_alpha(s[j])) ++j;
    return j == i + 1 ? std::min(j + 1, s.size()) : j;
  }
  return i + 1;
}

class Checker {
 public:
  explicit Checker(const Graph& graph) : g_(graph) {}

  void triple(const Triple& t, std::vector<Finding>& out) const {
    const auto& sch = schema();
    if (const auto* spec = sch.find(t.predicate)) {
      relation(t, *spec, out);
      return;
    }
    external_id(t, out);
  }

  void quantity(const Iri& q, std::vector<Finding>& out) const {
    if (g_.objects(q, props::is_kind_of()).empty()) {
      out.push_back({Severity::Warning, "V4", q, "quantity has no isKindOf quantity kind"});
    }
  }

  void task(const Iri& ct, std::vector<Finding>& out) const {
    Term eq(mmdb("equivalentTo"));
    Term self(ct);
    bool any = g_.count(&self, &eq, nullptr) > 0 || g_.count(nullptr, &eq, &self) > 0;
    if (!any) {
      out.push_back({Severity::Warning, "V6", ct,
                     "computational task has no equivalentTo algorithmic task"});
    }
  }

  void formulation(const Iri& f, std::vector<Finding>& out) const {
    auto latex = g_.objects(f, props::defining_formulation());
    if (latex.empty()) return;
    auto quantities = g_.objects(f, props::contains_quantity());
    if (quantities.empty()) {
      out.push_back({Severity::Warning, "V8", f,
                     "formulation has a defining formula but no contained quantity"});
      return;
    }
    std::set<std::string> housed;
    for (const auto& q : quantities) {
      const auto* iri = q.as_iri();
      if (!iri) continue;
      for (const auto& sym : g_.objects(*iri, props::symbol())) {
        for (const auto& s : latex_symbols(sym.lexical())) housed.insert(symbol_key(s));
      }
    }
    std::set<std::string> unhoused;
    for (const auto& expr : latex) {
      for (auto& s : latex_symbols(expr.lexical())) {
        if (!housed.count(symbol_key(s))) unhoused.insert(std::move(s));
      }
    }
    if (!unhoused.empty()) {
      std::string list;
      for (const auto& s : unhoused) list += (list.empty() ? "" : ", ") + s;
      out.push_back({Severity::Warning, "V9", f, "symbols without a contained quantity: " + list});
    }
  }

 private:
  void relation(const Triple& t, const RelationSpec& spec, std::vector<Finding>& out) const {
    const std::string pred = display_iri(t.predicate, g_.prefixes());
    const auto* object = t.object.as_iri();
    if (!object) {
      out.push_back({Severity::Error, "V1", t.subject, pred + " has a literal object"});
      return;
    }
    auto stypes = g_.types_of(t.subject);
    auto otypes = g_.types_of(*object);

    bool domain_ok = any_type_allowed(stypes, spec.domain);
    bool range_ok = any_type_allowed(otypes, spec.range);
    if (spec.symmetric() && !(domain_ok && range_ok)) {
      domain_ok = range_ok =
          any_type_allowed(stypes, spec.range) && any_type_allowed(otypes, spec.domain);
    }

    if (!domain_ok) {
      out.push_back({Severity::Error, "V1", t.subject,
                     pred + ": subject is " + class_list(stypes) + ", expected " +
                         class_list(spec.domain)});
    }

    if (spec.family == RelationFamily::Selection) {
      if (!g_.has_type(*object, OntologyClass::MathematicalFormulation)) {
        out.push_back({Severity::Error, "V7", t.subject,
                       pred + " target " + display_iri(*object, g_.prefixes()) +
                           " is not a mathematical formulation"});
      }
    } else if (t.predicate == props::contains_quantity() && otypes.empty()) {
      out.push_back({Severity::Error, "V3", t.subject,
                     "contained quantity " + display_iri(*object, g_.prefixes()) +
                         (g_.mentions(*object) ? " has no rdf:type" : " does not exist")});
    } else if (!range_ok) {
      out.push_back({Severity::Error, "V1", t.subject,
                     pred + ": object " + display_iri(*object, g_.prefixes()) + " is " +
                         class_list(otypes) + ", expected " + class_list(spec.range)});
    }

    if (spec.inverse && !(spec.symmetric() && t.subject == *object)) {
      if (!g_.contains({*object, *spec.inverse, Term(t.subject)})) {
        out.push_back({Severity::Warning, "V2", t.subject,
                       pred + " " + display_iri(*object, g_.prefixes()) + " lacks inverse " +
                           display_iri(*spec.inverse, g_.prefixes())});
      }
    }
  }

  void external_id(const Triple& t, std::vector<Finding>& out) const {
    static const std::regex wikidata(R"(Q[1-9][0-9]*)");
    static const std::regex msc(R"([0-9]{2}([A-Z][0-9]{2})?)");
    const std::string& v = t.object.lexical();
    std::string problem;
    if (t.predicate == props::qudt_id()) {
      if (!v.starts_with("http://qudt.org/vocab/") && !v.starts_with("https://qudt.org/vocab/")) {
        problem = "QUDT id must start with qudt.org/vocab/";
      }
    } else if (t.predicate == props::wikidata_id()) {
      if (!std::regex_match(v, wikidata)) problem = "Wikidata id must look like Q123";
    } else if (t.predicate == props::msc_id()) {
      if (!std::regex_match(v, msc)) problem = "MSC code must look like 65L06 or 65";
    } else if (t.predicate == props::dfg_id() || t.predicate == props::physh_id()) {
      if (v.empty()) problem = "identifier is empty";
    } else {
      return;
    }
    if (!problem.empty()) {
      out.push_back({Severity::Warning, "V5", t.subject, problem + " (got \"" + v + "\")"});
    }
  }

  const Graph& g_;
};

template <typename Item, typename Fn>
void run_checks(const std::vector<Item>& items, Execution execution, std::vector<Finding>& out,
                Fn fn) {
  const auto n = static_cast<long>(items.size());
  if (execution == Execution::Serial) {
    for (long i = 0; i < n; ++i) fn(items[static_cast<size_t>(i)], out);
    return;
  }
#pragma omp parallel
  {
    std::vector<Finding> local;
#pragma omp for schedule(static) nowait
    for (long i = 0; i < n; ++i) fn(items[static_cast<size_t>(i)], local);
#pragma omp critical
    out.insert(out.end(), std::make_move_iterator(local.begin()),
               std::make_move_iterator(local.end()));
  }
}

}  // namespace

std::string_view severity_name(Severity s) noexcept {
  return s == Severity::Error ? "error" : "warning";
}

size_t ValidationReport::errors() const noexcept {
  return static_cast<size_t>(std::count_if(findings.begin(), findings.end(),
                                           [](const Finding& f) { return f.severity == Severity::Error; }));
}

size_t ValidationReport::warnings() const noexcept { return findings.size() - errors(); }

ValidationReport validate(const Graph& graph, Execution execution) {
  Checker checker(graph);
  ValidationReport report;

  std::vector<const Triple*> triples;
  triples.reserve(graph.size());
  for (const auto& t : graph.triples()) triples.push_back(&t);
  run_checks(triples, execution, report.findings,
             [&](const Triple* t, std::vector<Finding>& out) { checker.triple(*t, out); });

  run_checks(graph.instances_of(OntologyClass::Quantity), execution, report.findings,
             [&](const Iri& q, std::vector<Finding>& out) { checker.quantity(q, out); });
  run_checks(graph.instances_of(OntologyClass::ComputationalTask), execution, report.findings,
             [&](const Iri& ct, std::vector<Finding>& out) { checker.task(ct, out); });
  run_checks(graph.instances_of(OntologyClass::MathematicalFormulation), execution,
             report.findings,
             [&](const Iri& f, std::vector<Finding>& out) { checker.formulation(f, out); });

  std::sort(report.findings.begin(), report.findings.end());
  return report;
}

size_t repair_inverses(Graph& graph) {
  std::vector<Triple> missing;
  for (const auto& t : graph.triples()) {
    const auto* spec = schema().find(t.predicate);
    const auto* object = t.object.as_iri();
    if (!spec || !spec->inverse || !object) continue;
    Triple inv{*object, *spec->inverse, Term(t.subject)};
    if (!graph.contains(inv)) missing.push_back(std::move(inv));
  }
  size_t added = 0;
  for (auto& t : missing) added += graph.insert(std::move(t)) ? 1 : 0;
  return added;
}

std::string report_to_json(const ValidationReport& report, const PrefixMap& prefixes) {
  nlohmann::ordered_json doc;
  doc["errors"] = report.errors();
  doc["warnings"] = report.warnings();
  auto findings = nlohmann::ordered_json::array();
  for (const auto& f : report.findings) {
    findings.push_back({{"severity", severity_name(f.severity)},
                        {"code", f.code},
                        {"subject", f.subject.str()},
                        {"display", display_iri(f.subject, prefixes)},
                        {"message", f.message}});
  }
  doc["findings"] = std::move(findings);
  return doc.dump(2) + "\n";
}

std::string report_to_text(const ValidationReport& report, const PrefixMap& prefixes) {
  std::string out;
  for (const auto& f : report.findings) {
    out += std::string(severity_name(f.severity)) + " " + f.code + " " +
           display_iri(f.subject, prefixes) + ": " + f.message + "\n";
  }
  out += std::to_string(report.errors()) + " error(s), " + std::to_string(report.warnings()) +
         " warning(s)\n";
  return out;
}

namespace {

// A subscript belongs to the symbol it follows: C_{D}, s_m.
size_t subscript_end(std::string_view s, size_t i) {
  return i < s.size() && s[i] == '_' ? skip_token(s, i + 1) : i;
}

}  // namespace

std::string symbol_key(std::string_view symbol) {
  auto us = symbol.find('_');
  if (us == std::string_view::npos) return std::string(symbol);
  std::string base(symbol.substr(0, us));
  std::string sub;
  for (char c : symbol.substr(us + 1)) {
    if (c != '{' && c != '}') sub += c;
  }
  bool index_only = !sub.empty();
  for (size_t k = 0; k < sub.size(); ++k) {
    bool ok = k % 2 == 0 ? std::string_view("ijklmn").find(sub[k]) != std::string_view::npos : sub[k] == ',';
    index_only = index_only && ok;
  }
  return index_only ? base : base + "_" + sub;
}

std::vector<std::string> latex_symbols(std::string_view s) {
  std::set<std::string> found;
  size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (c == '\\') {
      size_t j = i + 1;
      while (j < s.size() && is_alpha(s[j])) ++j;
      if (j == i + 1) {
        i = std::min(j + 1, s.size());
        continue;
      }
      std::string_view name = s.substr(i + 1, j - i - 1);
      if (is_greek(name)) {
        size_t end = subscript_end(s, j);
        found.insert(std::string(s.substr(i, end - i)));
        j = end;
      } else if (name == "mathrm" || name == "text" || name == "textrm" ||
                 name == "operatorname") {
        j = skip_token(s, j);
      }
      i = j;
    } else if (c == '_') {
      i = skip_token(s, i + 1);
    } else if (is_alpha(c)) {
      size_t end = subscript_end(s, i + 1);
      if (c != 'd' || end > i + 1) found.insert(std::string(s.substr(i, end - i)));
      i = end;
    } else {
      ++i;
    }
  }
  return {found.begin(), found.end()};
}

}  // namespace mathkg
