#include "mathkg/service.hpp"

#include <algorithm>
#include <filesystem>

#include "json.hpp"
#include "mathkg/dataset.hpp"
#include "mathkg/errors.hpp"
#include "mathkg/ingest.hpp"
#include "mathkg/query.hpp"
#include "mathkg/recommender.hpp"
#include "mathkg/turtle.hpp"
#include "mathkg/validator.hpp"

namespace mathkg {

using json = nlohmann::ordered_json;

namespace {

HttpResponse json_response(int status, const json& body) {
  HttpResponse r;
  r.status = status;
  r.body = body.dump(2) + "\n";
  return r;
}

HttpResponse error(int status, const std::string& message) {
  return json_response(status, {{"error", {{"status", status}, {"message", message}}}});
}

HttpResponse parse_error(const ParseError& e) {
  int status = e.kind() == ParseErrorKind::Unsupported ? 422 : 400;
  return json_response(status, {{"error",
                                 {{"status", status},
                                  {"kind", parse_error_kind_name(e.kind())},
                                  {"line", e.line()},
                                  {"column", e.column()},
                                  {"message", e.message()}}}});
}

json iri_json(const Iri& iri, const Graph& g) {
  json out = {{"iri", iri.str()}, {"display", display_iri(iri, g.prefixes())}};
  if (auto label = g.label(iri)) out["label"] = *label;
  json classes = json::array();
  for (auto c : g.types_of(iri)) classes.push_back(class_name(c));
  out["classes"] = std::move(classes);
  return out;
}

json term_json(const Term& t, const Graph& g) {
  if (const auto* iri = t.as_iri()) return iri_json(*iri, g);
  const auto& lit = t.literal();
  json out = {{"literal", lit.lexical()}, {"datatype", datatype_iri(lit.datatype())}};
  if (!lit.language().empty()) out["lang"] = lit.language();
  return out;
}

std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

size_t param_size(const HttpRequest& r, const std::string& key, size_t fallback) {
  auto it = r.params.find(key);
  if (it == r.params.end()) return fallback;
  try {
    return static_cast<size_t>(std::stoul(it->second));
  } catch (const std::exception&) {
    return fallback;
  }
}

Term override_object(const json& value) {
  if (value.is_boolean()) return Term(Literal::boolean(value.get<bool>()));
  if (value.is_number_integer()) return Term(Literal::integer(value.get<long long>()));
  if (value.is_number()) return Term(Literal(value.dump(), Datatype::Decimal));
  if (value.is_string()) return Term(Literal::string(value.get<std::string>()));
  throw std::invalid_argument("override value must be a boolean, number or string");
}

PropertySet override_set(const json& list, const PrefixMap& prefixes) {
  PropertySet out;
  if (list.is_null()) return out;
  for (const auto& item : list) {
    Iri predicate = parse_iri_argument(item.at("predicate").get<std::string>(), prefixes);
    out.emplace(predicate, override_object(item.at("object")));
  }
  return out;
}

}  // namespace

ServiceConfig ServiceConfig::from_json(const std::string& text) {
  auto doc = nlohmann::json::parse(text);
  ServiceConfig c;
  if (doc.contains("bindAddress")) {
    auto addr = doc["bindAddress"].get<std::string>();
    auto colon = addr.rfind(':');
    if (colon == std::string::npos) throw std::invalid_argument("bindAddress must be host:port");
    c.host = addr.substr(0, colon);
    c.port = std::stoi(addr.substr(colon + 1));
  }
  c.data_path = doc.at("dataPath").get<std::string>();
  c.read_only = doc.value("readOnly", true);
  if (doc.contains("corsAllowedOrigins")) {
    c.cors_allowed_origins = doc["corsAllowedOrigins"].get<std::vector<std::string>>();
  }
  return c;
}

Service::Service(ServiceConfig config) : config_(std::move(config)) {
  graph_ = std::make_shared<const Graph>(load_data(config_.data_path));
}

Service::Service(ServiceConfig config, Graph graph)
    : config_(std::move(config)), graph_(std::make_shared<const Graph>(std::move(graph))) {}

std::shared_ptr<const Graph> Service::snapshot() const {
  std::lock_guard lock(snapshot_mutex_);
  return graph_;
}

HttpResponse Service::handle(const HttpRequest& request) {
  HttpResponse response;
  if (request.method == "OPTIONS") {
    response.status = 204;
    response.content_type.clear();
  } else {
    try {
      response = route(request);
    } catch (const ParseError& e) {
      response = parse_error(e);
    } catch (const UnknownPrefix& e) {
      response = error(400, e.what());
    } catch (const MalformedQName& e) {
      response = error(400, e.what());
    } catch (const nlohmann::json::exception& e) {
      response = error(400, std::string("malformed JSON body: ") + e.what());
    } catch (const std::invalid_argument& e) {
      response = error(400, e.what());
    } catch (const std::exception& e) {
      response = error(500, e.what());
    }
  }

  auto origin = request.headers.find("origin");
  if (origin != request.headers.end()) {
    const auto& allowed = config_.cors_allowed_origins;
    bool any = std::find(allowed.begin(), allowed.end(), "*") != allowed.end();
    if (any || std::find(allowed.begin(), allowed.end(), origin->second) != allowed.end()) {
      response.headers["Access-Control-Allow-Origin"] = any ? "*" : origin->second;
      response.headers["Access-Control-Allow-Methods"] = "GET, POST, OPTIONS";
      response.headers["Access-Control-Allow-Headers"] = "Content-Type, Accept";
      if (!any) response.headers["Vary"] = "Origin";
    }
  }
  return response;
}

HttpResponse Service::route(const HttpRequest& r) {
  const std::string& p = r.path;
  if (r.method == "GET") {
    if (p == "/healthz") {
      return json_response(200, {{"status", "ok"}, {"triples", snapshot()->size()}});
    }
    if (p == "/api/classes") return classes();
    if (p == "/api/entities") return entities(r);
    if (p == "/api/validate") return validate();
    if (p == "/api/entity") {
      auto it = r.params.find("iri");
      if (it == r.params.end()) return error(400, "missing iri parameter");
      return entity(it->second);
    }
    if (p.starts_with("/api/entity/")) return entity(p.substr(std::string("/api/entity/").size()));
  } else if (r.method == "POST") {
    if (p == "/api/query") return query(r);
    if (p == "/api/recommend") return recommend(r);
    if (p == "/api/ingest") return ingest(r);
  }
  return error(404, "no route for " + r.method + " " + p);
}

HttpResponse Service::classes() const {
  auto g = snapshot();
  json out = json::array();
  for (auto c : kAllClasses) {
    out.push_back({{"class", class_name(c)},
                   {"iri", class_iri(c).str()},
                   {"display", class_display_name(c)},
                   {"count", g->instances_of(c).size()}});
  }
  return json_response(200, out);
}

HttpResponse Service::entities(const HttpRequest& r) const {
  auto g = snapshot();
  std::vector<Iri> candidates;
  if (auto it = r.params.find("class"); it != r.params.end() && !it->second.empty()) {
    auto cls = class_from_name(it->second);
    if (!cls) return error(400, "unknown class '" + it->second + "'");
    candidates = g->instances_of(*cls);
  } else {
    std::set<Iri> all;
    for (auto c : kAllClasses) {
      for (auto& e : g->instances_of(c)) all.insert(std::move(e));
    }
    candidates.assign(all.begin(), all.end());
  }
  std::string needle;
  if (auto it = r.params.find("q"); it != r.params.end()) needle = lower(it->second);
  std::vector<Iri> hits;
  for (auto& e : candidates) {
    if (needle.empty() || lower(g->label(e).value_or("")).find(needle) != std::string::npos ||
        lower(e.str()).find(needle) != std::string::npos) {
      hits.push_back(std::move(e));
    }
  }
  size_t offset = param_size(r, "offset", 0);
  size_t limit = std::min<size_t>(param_size(r, "limit", 50), 500);
  json items = json::array();
  for (size_t i = offset; i < hits.size() && i < offset + limit; ++i) items.push_back(iri_json(hits[i], *g));
  return json_response(200, {{"total", hits.size()}, {"offset", offset}, {"limit", limit}, {"items", items}});
}

HttpResponse Service::entity(const std::string& id) const {
  auto g = snapshot();
  Iri iri = parse_iri_argument(id, g->prefixes());
  if (!g->mentions(iri)) return error(404, "unknown entity <" + iri.str() + ">");
  Term self(iri);
  json outgoing = json::array();
  g->scan(&self, nullptr, nullptr, [&](const Triple& t) {
    outgoing.push_back({{"predicate", iri_json(t.predicate, *g)}, {"object", term_json(t.object, *g)}});
    return true;
  });
  json incoming = json::array();
  g->scan(nullptr, nullptr, &self, [&](const Triple& t) {
    incoming.push_back({{"subject", iri_json(t.subject, *g)}, {"predicate", iri_json(t.predicate, *g)}});
    return true;
  });
  json out = iri_json(iri, *g);
  out["outgoing"] = std::move(outgoing);
  out["incoming"] = std::move(incoming);
  return json_response(200, out);
}

HttpResponse Service::query(const HttpRequest& r) const {
  auto g = snapshot();
  auto q = query::parse_query(r.body);
  auto table = query::evaluate(*g, q);
  PrefixMap prefixes = g->prefixes();
  for (const auto& [k, v] : q.prefixes) prefixes[k] = v;
  auto accept = r.headers.find("accept");
  HttpResponse out;
  if (accept != r.headers.end() && accept->second.find("text/csv") != std::string::npos) {
    out.content_type = "text/csv; charset=utf-8";
    out.body = query::format_results(table, query::ResultFormat::Csv, prefixes);
  } else {
    out.body = query::format_results(table, query::ResultFormat::JsonRows, prefixes);
  }
  return out;
}

HttpResponse Service::recommend(const HttpRequest& r) const {
  auto g = snapshot();
  auto body = nlohmann::json::parse(r.body.empty() ? "{}" : r.body);
  try {
    RecommendResult result;
    if (body.contains("researchProblem")) {
      result = mathkg::recommend(*g, parse_iri_argument(body["researchProblem"].get<std::string>(), g->prefixes()));
    } else if (body.contains("task") && body.contains("formulation")) {
      PropertyOverrides overrides;
      if (body.contains("overrides")) {
        overrides.add = override_set(body["overrides"].value("add", nlohmann::json()), g->prefixes());
        overrides.remove = override_set(body["overrides"].value("remove", nlohmann::json()), g->prefixes());
      }
      result.recommendations.push_back(recommend_for(
          *g, parse_iri_argument(body["task"].get<std::string>(), g->prefixes()),
          parse_iri_argument(body["formulation"].get<std::string>(), g->prefixes()), overrides));
    } else {
      return error(400, "body must contain researchProblem, or task and formulation");
    }
    HttpResponse out;
    out.body = recommendations_to_json(result, g->prefixes());
    return out;
  } catch (const EntityError& e) {
    return error(e.kind() == EntityError::Kind::UnknownEntity ? 404 : 400, e.what());
  }
}

HttpResponse Service::ingest(const HttpRequest& r) {
  if (config_.read_only) return error(403, "service is read-only");
  std::lock_guard writer(writer_mutex_);
  auto current = snapshot();
  try {
    auto draft = parse_template(r.body, "request");
    auto triples = draft_to_triples(draft, current.get());
    Graph next = *current;
    MergeReport report = merge(next, triples, MergeMode::Additive);
    size_t inverses = repair_inverses(next);
    if (!config_.data_path.empty() && (report.added > 0 || inverses > 0)) {
      namespace fs = std::filesystem;
      if (fs::is_directory(config_.data_path)) {
        write_dataset(next, config_.data_path);
      } else {
        write_text(config_.data_path, turtle::serialize(next));
      }
    }
    {
      std::lock_guard lock(snapshot_mutex_);
      graph_ = std::make_shared<const Graph>(std::move(next));
    }
    json out = json::parse(merge_report_to_json(report));
    out["inversesAdded"] = inverses;
    out["warnings"] = draft.warnings;
    return json_response(200, out);
  } catch (const IngestError& e) {
    return json_response(400, {{"error", {{"status", 400}, {"line", e.line()}, {"message", e.what()}}}});
  }
}

HttpResponse Service::validate() const {
  auto g = snapshot();
  HttpResponse out;
  out.body = report_to_json(mathkg::validate(*g), g->prefixes());
  return out;
}

}  // namespace mathkg
