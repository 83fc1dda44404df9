#pragma once

#include <filesystem>
#include <memory>
#include <string>

#include "activerank/session.hpp"

namespace httplib {
class Server;
}

namespace activerank {

/// HTTP front end for a SessionManager:
///   POST /sessions               {items: [names], eps?}  -> {id, ...next}
///   GET  /sessions/:id/next                               -> {u, v, u_name, v_name} | {done, ranking}
///   POST /sessions/:id/answer    {u, v, preferred}        -> {ok, answered}
///   GET  /sessions/:id                                    -> full state
/// Errors are {error: code, message}. Static files under `static_dir` (if
/// given) are served at /.
class HttpService {
 public:
  explicit HttpService(SessionManager& sessions, std::filesystem::path static_dir = {});
  ~HttpService();

  /// Binds to `port` (0 picks a free port) and returns the bound port, or -1.
  int bind(const std::string& host, int port);
  /// Serves until stop() is called. Requires a successful bind().
  bool serve();
  void stop();

 private:
  SessionManager& sessions_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace activerank
