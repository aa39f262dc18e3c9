#pragma once

#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "mathkg/graph.hpp"

namespace mathkg {

struct ServiceConfig {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string data_path;
  bool read_only = true;
  std::vector<std::string> cors_allowed_origins;  // "*" allows any origin

  // Keys: bindAddress ("host:port"), dataPath, readOnly, corsAllowedOrigins.
  static ServiceConfig from_json(const std::string& text);
};

struct HttpRequest {
  std::string method;  // GET, POST, OPTIONS
  std::string path;    // decoded, without query string
  std::map<std::string, std::string> params;
  std::map<std::string, std::string> headers;  // lower-case names
  std::string body;
};

struct HttpResponse {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
  std::map<std::string, std::string> headers;
};

// Request handling without any network layer. Readers work on an immutable
// snapshot; ingest builds a new snapshot under a single writer lock and
// publishes it atomically.
class Service {
 public:
  // Loads config.data_path; throws ParseError on malformed data.
  explicit Service(ServiceConfig config);
  Service(ServiceConfig config, Graph graph);

  HttpResponse handle(const HttpRequest& request);

  std::shared_ptr<const Graph> snapshot() const;
  const ServiceConfig& config() const noexcept { return config_; }

 private:
  HttpResponse route(const HttpRequest& request);
  HttpResponse classes() const;
  HttpResponse entities(const HttpRequest& request) const;
  HttpResponse entity(const std::string& id) const;
  HttpResponse query(const HttpRequest& request) const;
  HttpResponse recommend(const HttpRequest& request) const;
  HttpResponse ingest(const HttpRequest& request);
  HttpResponse validate() const;

  ServiceConfig config_;
  std::shared_ptr<const Graph> graph_;
  mutable std::mutex snapshot_mutex_;
  std::mutex writer_mutex_;
};

// Binds the configured address and serves until the process is stopped.
// Returns a non-zero code when binding fails.
int serve(const ServiceConfig& config, std::ostream& log);

}  // namespace mathkg
