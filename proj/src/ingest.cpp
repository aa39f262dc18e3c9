#include "mathkg/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <regex>
#include <set>

#include "json.hpp"

namespace mathkg {

IngestError::IngestError(Kind kind, int line, const std::string& message)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
      kind_(kind),
      line_(line) {}

namespace {

std::string trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

// Lower-cased words joined by single spaces.
std::string normalize(std::string_view s) {
  std::string out;
  bool space = false;
  for (char c : s) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      if (space && !out.empty()) out += ' ';
      space = false;
      out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    } else {
      space = true;
    }
  }
  return out;
}

std::string plural(std::string_view singular) {
  if (singular.ends_with("y")) return std::string(singular.substr(0, singular.size() - 1)) + "ies";
  if (singular.ends_with("software")) return std::string(singular);
  return std::string(singular) + "s";
}

enum class SectionKind { None, Class, Relations, Properties, Unknown };

struct Section {
  SectionKind kind = SectionKind::None;
  OntologyClass cls = OntologyClass::MathematicalModel;
};

Section section_for(std::string_view heading) {
  auto h = normalize(heading);
  if (h == "relations") return {SectionKind::Relations};
  if (h == "properties") return {SectionKind::Properties};
  for (auto c : kAllClasses) {
    auto d = normalize(class_display_name(c));
    std::vector<std::string> names = {d, plural(d)};
    if (c == OntologyClass::MathematicalModel) names.insert(names.end(), {"model", "models"});
    if (c == OntologyClass::MathematicalFormulation) {
      names.insert(names.end(), {"formulation", "formulations"});
    }
    if (std::find(names.begin(), names.end(), h) != names.end()) return {SectionKind::Class, c};
  }
  return {SectionKind::Unknown};
}

std::string_view namespace_of(OntologyClass c) { return is_mathalgodb_class(c) ? ns::kMadb : ns::kMmdb; }

Iri mint(OntologyClass cls, const std::string& name, const std::string& id, int line) {
  try {
    if (id.empty()) {
      auto local = upper_camel(name);
      if (local.empty()) throw IngestError(IngestError::Kind::InvalidField, line, "empty name");
      return Iri(std::string(namespace_of(cls)) + local);
    }
    if (id.find("://") != std::string::npos) return Iri(id);
    if (id.find(':') != std::string::npos) return expand_prefix(id, default_prefixes());
    if (!is_valid_local_name(id)) {
      throw IngestError(IngestError::Kind::InvalidField, line, "invalid id '" + id + "'");
    }
    return Iri(std::string(namespace_of(cls)) + id);
  } catch (const IngestError&) {
    throw;
  } catch (const std::exception& e) {
    throw IngestError(IngestError::Kind::InvalidField, line, "invalid id '" + id + "': " + e.what());
  }
}

Literal typed_literal(const std::string& value) {
  if (value == "true" || value == "false") return Literal::boolean(value == "true");
  if (valid_lexical(Datatype::Integer, value)) return Literal(value, Datatype::Integer);
  if (valid_lexical(Datatype::Decimal, value)) return Literal(value, Datatype::Decimal);
  return Literal::string(value);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    size_t pos = s.find(sep, start);
    auto part = trim(std::string_view(s).substr(start, pos == std::string::npos ? std::string::npos : pos - start));
    if (!part.empty()) out.push_back(std::move(part));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

const RelationSpec* relation_for_key(const std::string& key) {
  auto n = normalize(key);
  if (n == "kind") return schema().find(props::is_kind_of());
  if (const auto* r = schema().find_by_display_name(key)) return r;
  if (key.find(' ') == std::string::npos && is_valid_local_name(key)) {
    if (const auto* r = schema().find(mmdb(key))) return r;
    if (const auto* r = schema().find(madb(key))) return r;
  }
  return nullptr;
}

class TripleBuilder {
 public:
  TripleBuilder(const TemplateDraft& draft, const Graph* context) : draft_(draft), context_(context) {}

  std::vector<Triple> run() {
    for (const auto& e : draft_.entities) {
      add({e.iri, rdf_type(), Term(class_iri(e.cls))});
      add({e.iri, rdfs_label(), Term(Literal::string(e.name))});
      for (const auto& f : e.fields) field(e.iri, f.key, f.value, f.line);
    }
    for (const auto& r : draft_.relations) {
      if (!relation_for_key(r.key)) {
        throw IngestError(IngestError::Kind::InvalidField, r.line, "unknown relation '" + r.key + "'");
      }
      field(resolve(r.subject, r.line), r.key, r.value, r.line);
    }
    for (const auto& p : draft_.properties) field(resolve(p.subject, p.line), p.key, p.value, p.line);
    return {out_.begin(), out_.end()};
  }

 private:
  void add(Triple t) { out_.insert(std::move(t)); }

  void field(const Iri& subject, const std::string& key, const std::string& value, int line) {
    auto k = normalize(key);
    if (k == "id") return;
    if (value.empty()) {
      throw IngestError(IngestError::Kind::InvalidField, line, "field '" + key + "' has no value");
    }
    try {
      if (k == "name" || k == "label") {
        add({subject, rdfs_label(), Term(Literal::string(value))});
      } else if (k == "description" || k == "comment") {
        add({subject, rdfs_comment(), Term(Literal::string(value))});
      } else if (k == "formula" || k == "defining formulation") {
        add({subject, props::defining_formulation(), Term(Literal::latex(value))});
      } else if (k == "symbol") {
        add({subject, props::symbol(), Term(Literal::latex(value))});
      } else if (k == "tensor order") {
        add({subject, props::tensor_order(), Term(Literal::string(value))});
      } else if (auto id = external_id(k)) {
        add({subject, *id, Term(Literal::external_id(value))});
      } else if (const auto* rel = relation_for_key(key)) {
        for (const auto& ref : split(value, ';')) add({subject, rel->forward, Term(resolve(ref, line))});
      } else {
        auto local = lower_camel(key);
        if (!is_valid_local_name(local)) {
          throw IngestError(IngestError::Kind::InvalidField, line, "invalid property key '" + key + "'");
        }
        add({subject, mmdb(local), Term(typed_literal(value))});
      }
    } catch (const std::invalid_argument& e) {
      throw IngestError(IngestError::Kind::InvalidField, line, e.what());
    }
  }

  static std::optional<Iri> external_id(const std::string& k) {
    if (k == "qudt" || k == "qudt id") return props::qudt_id();
    if (k == "wikidata" || k == "wikidata id") return props::wikidata_id();
    if (k == "msc" || k == "msc id") return props::msc_id();
    if (k == "dfg" || k == "dfg id") return props::dfg_id();
    if (k == "physh" || k == "physh id") return props::physh_id();
    return std::nullopt;
  }

  bool known(const Iri& iri) const {
    for (const auto& e : draft_.entities) {
      if (e.iri == iri) return true;
    }
    return context_ && context_->mentions(iri);
  }

  Iri resolve(const std::string& ref, int line) const {
    auto r = trim(ref);
    auto local_of = [](const Iri& iri) {
      std::string_view local = iri.str();
      local.remove_prefix(local.find_last_of("#/") + 1);
      return local;
    };
    // Exact id, then exact name, then case-insensitive name or CamelCase form.
    for (const auto& e : draft_.entities) {
      if (local_of(e.iri) == r) return e.iri;
    }
    for (const auto& e : draft_.entities) {
      if (e.name == r) return e.iri;
    }
    auto camel = upper_camel(r);
    for (const auto& e : draft_.entities) {
      if (lower(e.name) == lower(r) || local_of(e.iri) == camel) return e.iri;
    }
    if (r.find(':') != std::string::npos) {
      try {
        Iri iri = r.find("://") != std::string::npos ? Iri(r) : expand_prefix(r, default_prefixes());
        if (known(iri)) return iri;
      } catch (const std::exception&) {
      }
    }
    if (context_) {
      for (const auto& s : context_->subjects(rdfs_label(), Term(Literal::string(r)))) return s;
      if (is_valid_local_name(r)) {
        for (const auto& iri : {mmdb(r), madb(r)}) {
          if (context_->mentions(iri)) return iri;
        }
      }
      if (!camel.empty()) {
        for (const auto& iri : {mmdb(camel), madb(camel)}) {
          if (context_->mentions(iri)) return iri;
        }
      }
    }
    throw IngestError(IngestError::Kind::UnresolvableReference, line,
                      "unresolvable reference '" + r + "'");
  }

  const TemplateDraft& draft_;
  const Graph* context_;
  std::set<Triple> out_;
};

bool functional(const Iri& predicate, const Term& object) {
  if (predicate == rdfs_label()) return true;
  const auto* lit = object.as_literal();
  return lit && (lit->datatype() == Datatype::Latex || lit->datatype() == Datatype::ExternalId);
}

}  // namespace

TemplateDraft parse_template(std::string_view markdown, std::string source) {
  static const std::regex bullet(R"(^\s*[-*+]\s+(.*)$)");
  TemplateDraft draft;
  draft.source = std::move(source);

  Section section;
  bool recognised = false;
  bool in_fence = false;
  int fence_line = 0;
  std::string fence_text;
  DraftEntity* current = nullptr;

  auto finish = [&](int line) {
    if (current) current->last_line = line;
  };
  auto warn = [&](int line, const std::string& msg) {
    draft.warnings.push_back(draft.source + ":" + std::to_string(line) + ": " + msg);
  };

  int line_no = 0;
  size_t pos = 0;
  while (pos <= markdown.size()) {
    size_t end = markdown.find('\n', pos);
    if (end == std::string_view::npos) end = markdown.size();
    std::string line(markdown.substr(pos, end - pos));
    if (!line.empty() && line.back() == '\r') line.pop_back();
    ++line_no;
    pos = end + 1;

    std::string t = trim(line);
    if (t.starts_with("```")) {
      if (!in_fence) {
        in_fence = true;
        fence_line = line_no;
        fence_text.clear();
      } else {
        in_fence = false;
        if (!fence_text.empty() && fence_text.back() == '\n') fence_text.pop_back();
        std::string value = trim(fence_text);
        if (section.kind == SectionKind::Class && current) {
          if (!current->fields.empty() && current->fields.back().value.empty()) {
            current->fields.back().value = value;
          } else {
            current->fields.push_back({"formula", value, fence_line});
          }
          current->last_line = line_no;
        } else {
          warn(fence_line, "code block outside an entity ignored");
        }
      }
      continue;
    }
    if (in_fence) {
      fence_text += line + "\n";
      continue;
    }

    if (t.starts_with("## ") || t == "##") {
      finish(line_no - 1);
      current = nullptr;
      std::string heading = trim(t.substr(2));
      section = section_for(heading);
      if (section.kind == SectionKind::Unknown) {
        warn(line_no, "unknown section '" + heading + "' ignored");
      } else {
        recognised = true;
        if (section.kind == SectionKind::Class && is_mathalgodb_class(section.cls)) {
          warn(line_no, "section '" + heading + "' describes the algorithm side (extension)");
        }
      }
      continue;
    }
    if (t.starts_with("#")) continue;

    std::smatch m;
    if (!std::regex_match(line, m, bullet)) continue;
    std::string body = trim(m[1].str());

    switch (section.kind) {
      case SectionKind::Class: {
        auto colon = body.find(':');
        if (colon == std::string::npos) {
          warn(line_no, "bullet without 'key: value' ignored");
          break;
        }
        std::string key = trim(body.substr(0, colon));
        std::string value = trim(body.substr(colon + 1));
        if (normalize(key) == "name") {
          finish(line_no - 1);
          if (value.empty()) {
            throw IngestError(IngestError::Kind::InvalidField, line_no, "empty name");
          }
          current = &draft.entities.emplace_back();
          current->cls = section.cls;
          current->name = value;
          current->first_line = current->last_line = line_no;
        } else if (!current) {
          warn(line_no, "field '" + key + "' before any '- name:' ignored");
        } else {
          current->fields.push_back({key, value, line_no});
          current->last_line = line_no;
        }
        break;
      }
      case SectionKind::Relations:
      case SectionKind::Properties: {
        auto parts = split(body, '|');
        if (parts.size() != 3) {
          warn(line_no, "expected 'subject | key | value', bullet ignored");
          break;
        }
        auto& list = section.kind == SectionKind::Relations ? draft.relations : draft.properties;
        list.push_back({parts[0], parts[1], parts[2], line_no});
        break;
      }
      default:
        break;
    }
  }
  if (in_fence) throw IngestError(IngestError::Kind::InvalidField, fence_line, "unterminated code block");
  finish(line_no);
  if (!recognised) {
    throw IngestError(IngestError::Kind::EmptyTemplate, 0, "template has no recognised section");
  }

  for (auto& e : draft.entities) {
    std::string id;
    for (const auto& f : e.fields) {
      if (normalize(f.key) == "id") id = f.value;
    }
    e.iri = mint(e.cls, e.name, id, e.first_line);
    auto [it, inserted] = draft.proposed_iris.emplace(e.name, e.iri);
    if (!inserted && it->second != e.iri) {
      warn(e.first_line, "name '" + e.name + "' used for two different entities");
    }
  }
  return draft;
}

TemplateDraft combine_drafts(const std::vector<TemplateDraft>& drafts) {
  TemplateDraft out;
  for (const auto& d : drafts) {
    out.source += (out.source.empty() ? "" : "+") + d.source;
    out.entities.insert(out.entities.end(), d.entities.begin(), d.entities.end());
    out.relations.insert(out.relations.end(), d.relations.begin(), d.relations.end());
    out.properties.insert(out.properties.end(), d.properties.begin(), d.properties.end());
    out.proposed_iris.insert(d.proposed_iris.begin(), d.proposed_iris.end());
    out.warnings.insert(out.warnings.end(), d.warnings.begin(), d.warnings.end());
  }
  return out;
}

std::vector<Triple> draft_to_triples(const TemplateDraft& draft, const Graph* context) {
  return TripleBuilder(draft, context).run();
}

MergeReport merge(Graph& graph, const std::vector<Triple>& triples, MergeMode mode) {
  MergeReport report;
  report.incoming = triples.size();
  std::set<Iri> blocked;
  if (mode == MergeMode::Strict) {
    for (const auto& t : triples) {
      if (!functional(t.predicate, t.object)) continue;
      for (const auto& existing : graph.objects(t.subject, t.predicate)) {
        if (existing != t.object) {
          report.conflicts.push_back({t.subject, t.predicate, existing, t.object});
          blocked.insert(t.subject);
        }
      }
    }
  }
  for (const auto& t : triples) {
    if (blocked.count(t.subject)) continue;
    if (graph.insert(t)) {
      ++report.added;
    } else {
      ++report.skipped;
    }
  }
  return report;
}

std::string merge_report_to_json(const MergeReport& report) {
  nlohmann::ordered_json doc;
  doc["incoming"] = report.incoming;
  doc["added"] = report.added;
  doc["skipped"] = report.skipped;
  auto conflicts = nlohmann::ordered_json::array();
  for (const auto& c : report.conflicts) {
    conflicts.push_back({{"subject", c.subject.str()},
                         {"predicate", c.predicate.str()},
                         {"existing", c.existing.lexical()},
                         {"incoming", c.incoming.lexical()}});
  }
  doc["conflicts"] = std::move(conflicts);
  return doc.dump(2) + "\n";
}

}  // namespace mathkg
