#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "mathkg/graph.hpp"

namespace mathkg {

// Parses one Turtle file into `graph`, adding its prefixes. ParseError
// messages are prefixed with the file name.
void load_file(Graph& graph, const std::filesystem::path& path);

// Loads every *.ttl file of `dir` in sorted filename order. Returns the files
// loaded.
std::vector<std::filesystem::path> load_directory(Graph& graph, const std::filesystem::path& dir);

// Loads a directory or a single .ttl file.
Graph load_data(const std::filesystem::path& path);

uint64_t fnv1a64(std::string_view data) noexcept;

struct ManifestFile {
  std::string path;
  std::string checksum;  // FNV-1a 64, 16 hex digits
  size_t triples = 0;
};

struct Manifest {
  std::vector<ManifestFile> files;
  std::map<std::string, size_t> expected_counts;  // class name -> instances
};

// Subjects typed with an algorithm-side class go to mathalgodb.ttl, the rest
// to mathmoddb.ttl.
std::map<std::string, Graph> split_dataset(const Graph& graph);

// Writes mathmoddb.ttl, mathalgodb.ttl and manifest.json.
Manifest write_dataset(const Graph& graph, const std::filesystem::path& dir);

Manifest manifest_for(const Graph& graph, const std::map<std::string, std::string>& files);
std::string manifest_to_json(const Manifest& manifest);
Manifest manifest_from_json(std::string_view text);

// Differences between the manifest and the files/graph found in `dir`;
// empty when everything matches.
std::vector<std::string> check_manifest(const std::filesystem::path& dir);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, std::string_view text);

}  // namespace mathkg
