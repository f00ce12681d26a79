#pragma once

// JSON-over-HTTP service. Routing and payloads live in `handle`, which is a
// pure function of the request; `Server` only binds it to a socket.

#include <memory>
#include <string>

namespace nncost {

struct HttpRequest {
  std::string method;  // "GET", "POST", ...
  std::string path;
  std::string content_type;
  std::string body;
};

struct HttpResponse {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

/// Routes under /api/v1:
///   GET  health, hardware, hardware/<id>, zoo, zoo/<id>
///   POST analyze, compare, curve
HttpResponse handle(const HttpRequest& request);

class Server {
 public:
  Server();
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  /// Binds and starts serving on a background thread. Port 0 picks a free
  /// port. Returns the bound port; throws std::runtime_error if binding fails.
  int start(const std::string& host, int port);
  /// Serves on the calling thread until stop() is called from elsewhere.
  void listen(const std::string& host, int port);
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace nncost
