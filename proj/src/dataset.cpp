#include "mathkg/dataset.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "mathkg/errors.hpp"
#include "mathkg/turtle.hpp"

namespace mathkg {

namespace fs = std::filesystem;

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const fs::path& path, std::string_view text) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw std::runtime_error("cannot write " + path.string());
  }
  fs::rename(tmp, path);
}

void load_file(Graph& graph, const fs::path& path) {
  std::string text = read_text(path);
  turtle::Document doc;
  try {
    doc = turtle::parse_document(text);
  } catch (const ParseError& e) {
    throw ParseError(e.kind(), e.line(), e.column(), path.filename().string() + ": " + e.message());
  }
  for (auto& [prefix, ns] : doc.prefixes) graph.prefixes()[prefix] = ns;
  for (auto& t : doc.triples) graph.insert(std::move(t));
}

std::vector<fs::path> load_directory(Graph& graph, const fs::path& dir) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".ttl") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& f : files) load_file(graph, f);
  return files;
}

Graph load_data(const fs::path& path) {
  Graph graph;
  if (fs::is_directory(path)) {
    load_directory(graph, path);
  } else if (fs::exists(path)) {
    load_file(graph, path);
  } else {
    throw std::runtime_error("data path " + path.string() + " does not exist");
  }
  return graph;
}

uint64_t fnv1a64(std::string_view data) noexcept {
  uint64_t h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

namespace {

std::string hex64(uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

bool algorithm_side(const Graph& graph, const Iri& subject) {
  auto types = graph.types_of(subject);
  return !types.empty() && std::all_of(types.begin(), types.end(), is_mathalgodb_class);
}

}  // namespace

std::map<std::string, Graph> split_dataset(const Graph& graph) {
  std::map<std::string, Graph> out;
  Graph& mm = out["mathmoddb.ttl"];
  Graph& ma = out["mathalgodb.ttl"];
  mm.prefixes() = graph.prefixes();
  ma.prefixes() = graph.prefixes();
  for (const auto& t : graph.triples()) {
    (algorithm_side(graph, t.subject) ? ma : mm).insert(t);
  }
  return out;
}

Manifest manifest_for(const Graph& graph, const std::map<std::string, std::string>& files) {
  Manifest m;
  for (const auto& [name, text] : files) {
    Graph part;
    for (auto& t : turtle::parse_document(text).triples) part.insert(std::move(t));
    m.files.push_back({name, hex64(fnv1a64(text)), part.size()});
  }
  for (auto c : kAllClasses) m.expected_counts[std::string(class_name(c))] = graph.instances_of(c).size();
  return m;
}

Manifest write_dataset(const Graph& graph, const fs::path& dir) {
  fs::create_directories(dir);
  std::map<std::string, std::string> files;
  for (const auto& [name, part] : split_dataset(graph)) files[name] = turtle::serialize(part);
  for (const auto& [name, text] : files) write_text(dir / name, text);
  Manifest m = manifest_for(graph, files);
  write_text(dir / "manifest.json", manifest_to_json(m));
  return m;
}

std::string manifest_to_json(const Manifest& manifest) {
  nlohmann::ordered_json doc;
  auto files = nlohmann::ordered_json::array();
  for (const auto& f : manifest.files) {
    files.push_back({{"path", f.path}, {"fnv1a64", f.checksum}, {"triples", f.triples}});
  }
  doc["files"] = std::move(files);
  nlohmann::ordered_json counts = nlohmann::ordered_json::object();
  for (const auto& [cls, n] : manifest.expected_counts) counts[cls] = n;
  doc["expectedCounts"] = std::move(counts);
  return doc.dump(2) + "\n";
}

Manifest manifest_from_json(std::string_view text) {
  auto doc = nlohmann::json::parse(text);
  Manifest m;
  for (const auto& f : doc.at("files")) {
    m.files.push_back({f.at("path").get<std::string>(), f.at("fnv1a64").get<std::string>(),
                       f.at("triples").get<size_t>()});
  }
  for (const auto& [cls, n] : doc.at("expectedCounts").items()) m.expected_counts[cls] = n.get<size_t>();
  return m;
}

std::vector<std::string> check_manifest(const fs::path& dir) {
  std::vector<std::string> problems;
  Manifest m = manifest_from_json(read_text(dir / "manifest.json"));
  Graph graph;
  for (const auto& f : m.files) {
    fs::path p = dir / f.path;
    if (!fs::exists(p)) {
      problems.push_back(f.path + ": missing");
      continue;
    }
    std::string text = read_text(p);
    if (hex64(fnv1a64(text)) != f.checksum) problems.push_back(f.path + ": checksum mismatch");
    Graph part;
    load_file(part, p);
    if (part.size() != f.triples) {
      problems.push_back(f.path + ": " + std::to_string(part.size()) + " triples, manifest says " +
                         std::to_string(f.triples));
    }
    for (const auto& t : part.triples()) graph.insert(t);
  }
  for (const auto& [cls, expected] : m.expected_counts) {
    auto c = class_from_name(cls);
    if (!c) {
      problems.push_back("unknown class " + cls + " in manifest");
      continue;
    }
    size_t actual = graph.instances_of(*c).size();
    if (actual != expected) {
      problems.push_back(cls + ": " + std::to_string(actual) + " instances, manifest says " +
                         std::to_string(expected));
    }
  }
  return problems;
}

}  // namespace mathkg
