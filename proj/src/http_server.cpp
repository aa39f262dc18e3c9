#include <ostream>

#include "httplib.h"
#include "mathkg/service.hpp"

namespace mathkg {

int serve(const ServiceConfig& config, std::ostream& log) {
  Service service(config);
  httplib::Server server;

  auto handler = [&](const httplib::Request& req, httplib::Response& res) {
    HttpRequest r;
    r.method = req.method;
    r.path = req.path;
    for (const auto& [k, v] : req.params) r.params[k] = v;
    for (const auto& [k, v] : req.headers) {
      std::string key = k;
      for (auto& c : key) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      r.headers[key] = v;
    }
    r.body = req.body;
    HttpResponse out = service.handle(r);
    res.status = out.status;
    for (const auto& [k, v] : out.headers) res.set_header(k, v);
    if (!out.content_type.empty()) res.set_content(out.body, out.content_type);
  };
  server.Get(R"(/.*)", handler);
  server.Post(R"(/.*)", handler);
  server.Options(R"(/.*)", handler);

  log << "serving " << service.snapshot()->size() << " triples on http://" << config.host << ":"
      << config.port << (config.read_only ? " (read-only)" : "") << std::endl;
  if (!server.listen(config.host, config.port)) {
    log << "cannot bind " << config.host << ":" << config.port << std::endl;
    return 1;
  }
  return 0;
}

}  // namespace mathkg
