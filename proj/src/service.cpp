#include "nncost/service.hpp"

#include <httplib.h>

#include <stdexcept>
#include <thread>

#include "nncost/report.hpp"
#include "nncost/zoo.hpp"

namespace nncost {

namespace {

constexpr std::string_view kPrefix = "/api/v1/";

HttpResponse json_response(int status, const nlohmann::json& body) {
  return {status, "application/json", render_json(body)};
}

HttpResponse error_response(const Error& e) {
  const int status = e.kind() == ErrorKind::not_found ? 404 : 400;
  return json_response(status, error_json(e));
}

HttpResponse plain_error(int status, std::string_view code, const std::string& message) {
  return json_response(status, {{"code", std::string(code)}, {"message", message}});
}

bool is_json(const std::string& content_type) {
  const auto semi = content_type.find(';');
  auto media = content_type.substr(0, semi);
  while (!media.empty() && media.back() == ' ') media.pop_back();
  for (auto& c : media) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return media == "application/json";
}

nlohmann::json zoo_entry_json(const ModelZooEntry& e) {
  return {{"id", e.id}, {"provenance", e.provenance}, {"spec", to_json(e.spec)}};
}

HttpResponse route_get(std::string_view route) {
  if (route == "health") {
    return json_response(200, {{"status", "ok"}, {"version", std::string(kToolVersion)}});
  }
  if (route == "hardware") {
    nlohmann::json profiles = nlohmann::json::array();
    for (const auto& p : builtin_database().profiles()) profiles.push_back(to_json(p));
    return json_response(200, {{"format_version", std::string(kFormatVersion)},
                               {"profiles", std::move(profiles)}});
  }
  if (route.rfind("hardware/", 0) == 0) {
    return json_response(200, to_json(builtin_database().get(route.substr(9))));
  }
  if (route == "zoo") {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& e : model_zoo()) entries.push_back(zoo_entry_json(e));
    return json_response(200, {{"entries", std::move(entries)}});
  }
  if (route.rfind("zoo/", 0) == 0) {
    return json_response(200, zoo_entry_json(zoo_entry(route.substr(4))));
  }
  return plain_error(404, "not_found", "no such route: GET /api/v1/" + std::string(route));
}

HttpResponse route_post(std::string_view route, const HttpRequest& req) {
  const bool known = route == "analyze" || route == "compare" || route == "curve";
  if (!known) {
    return plain_error(404, "not_found", "no such route: POST /api/v1/" + std::string(route));
  }
  if (!is_json(req.content_type)) {
    return plain_error(415, "unsupported_media_type", "content type must be application/json");
  }
  if (route == "analyze") {
    return json_response(200, to_json(analyze(decode_analysis_request(req.body))));
  }
  if (route == "compare") {
    return json_response(200, to_json(compare(decode_compare_request(req.body))));
  }
  return json_response(200, to_json(curve(decode_curve_request(req.body))));
}

}  // namespace

HttpResponse handle(const HttpRequest& req) {
  if (req.path.rfind(kPrefix, 0) != 0) {
    return plain_error(404, "not_found", "no such route: " + req.path);
  }
  const std::string_view route = std::string_view(req.path).substr(kPrefix.size());
  try {
    if (req.method == "GET") return route_get(route);
    if (req.method == "POST") return route_post(route, req);
    return plain_error(405, "method_not_allowed", "method " + req.method + " not allowed");
  } catch (const Error& e) {
    return error_response(e);
  } catch (const std::exception& e) {
    return plain_error(500, "internal_error", e.what());
  }
}

struct Server::Impl {
  httplib::Server http;
  std::thread thread;

  Impl() {
    auto forward = [](const httplib::Request& in, httplib::Response& out) {
      HttpRequest req{in.method, in.path, in.get_header_value("Content-Type"), in.body};
      const auto res = handle(req);
      out.status = res.status;
      out.set_content(res.body, res.content_type);
    };
    // Catch-all routes; all dispatch happens in handle().
    http.Get(".*", forward);
    http.Post(".*", forward);
    http.Put(".*", forward);
    http.Delete(".*", forward);
    http.Options(".*", [](const httplib::Request&, httplib::Response& out) { out.status = 204; });
    http.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                              {"Access-Control-Allow-Headers", "Content-Type"},
                              {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
  }
};

Server::Server() : impl_(std::make_unique<Impl>()) {}

Server::~Server() { stop(); }

int Server::start(const std::string& host, int port) {
  int bound = port;
  if (port == 0) {
    bound = impl_->http.bind_to_any_port(host);
  } else if (!impl_->http.bind_to_port(host, port)) {
    bound = -1;
  }
  if (bound < 0) throw std::runtime_error("cannot bind " + host + ":" + std::to_string(port));
  impl_->thread = std::thread([this] { impl_->http.listen_after_bind(); });
  impl_->http.wait_until_ready();
  return bound;
}

void Server::listen(const std::string& host, int port) {
  if (!impl_->http.listen(host, port)) {
    throw std::runtime_error("cannot listen on " + host + ":" + std::to_string(port));
  }
}

void Server::stop() {
  impl_->http.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

}  // namespace nncost
