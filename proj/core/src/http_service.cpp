#include "activerank/http_service.hpp"

#include <httplib.h>

namespace activerank {

namespace {

int status_for(const std::string& code) {
  if (code == "unknown_session") return 404;
  if (code == "stale_pair") return 409;
  if (code == "session_failed") return 500;
  return 400;
}

void send_json(httplib::Response& res, const nlohmann::json& body, int status = 200) {
  res.status = status;
  res.set_content(body.dump(), "application/json; charset=utf-8");
}

void send_error(httplib::Response& res, const std::string& code, const std::string& message,
                const nlohmann::json& detail = nlohmann::json::object()) {
  nlohmann::json body = detail;
  body["error"] = code;
  body["message"] = message;
  send_json(res, body, status_for(code));
}

template <typename Handler>
httplib::Server::Handler guarded(Handler handler) {
  return [handler](const httplib::Request& req, httplib::Response& res) {
    try {
      handler(req, res);
    } catch (const SessionError& e) {
      send_error(res, e.code(), e.what(), e.detail());
    } catch (const nlohmann::json::exception& e) {
      send_error(res, "invalid_request", e.what());
    } catch (const std::exception& e) {
      send_error(res, "internal", e.what());
    }
  };
}

nlohmann::json parse_body(const httplib::Request& req) {
  nlohmann::json body = nlohmann::json::parse(req.body);
  if (!body.is_object()) throw SessionError("invalid_request", "body must be a JSON object");
  return body;
}

}  // namespace

HttpService::HttpService(SessionManager& sessions, std::filesystem::path static_dir)
    : sessions_(sessions), server_(std::make_unique<httplib::Server>()) {
  auto& s = *server_;

  s.Post("/sessions", guarded([this](const httplib::Request& req, httplib::Response& res) {
    const auto body = parse_body(req);
    if (!body.contains("items") || !body["items"].is_array()) {
      throw SessionError("invalid_request", "items must be an array of names");
    }
    const auto items = body["items"].get<std::vector<std::string>>();
    const double eps = body.value("eps", 0.0);
    const std::string id = sessions_.create(items, eps);
    nlohmann::json view = sessions_.find(id)->next();
    send_json(res, view, 201);
  }));

  s.Get(R"(/sessions/([0-9a-f]+)/next)",
        guarded([this](const httplib::Request& req, httplib::Response& res) {
          send_json(res, sessions_.find(req.matches[1])->next());
        }));

  s.Post(R"(/sessions/([0-9a-f]+)/answer)",
         guarded([this](const httplib::Request& req, httplib::Response& res) {
           const auto session = sessions_.find(req.matches[1]);
           const auto body = parse_body(req);
           for (const char* key : {"u", "v", "preferred"}) {
             if (!body.contains(key) || !body[key].is_number_unsigned()) {
               throw SessionError("invalid_request",
                                  std::string(key) + " must be a non-negative item id");
             }
           }
           send_json(res, session->answer(body["u"].get<ElementId>(), body["v"].get<ElementId>(),
                                          body["preferred"].get<ElementId>()));
         }));

  s.Get(R"(/sessions/([0-9a-f]+))",
        guarded([this](const httplib::Request& req, httplib::Response& res) {
          const auto session = sessions_.find(req.matches[1]);
          session->wait_idle();
          send_json(res, session->state());
        }));

  if (!static_dir.empty()) s.set_mount_point("/", static_dir.string());
}

HttpService::~HttpService() = default;

int HttpService::bind(const std::string& host, int port) {
  if (port == 0) return server_->bind_to_any_port(host);
  return server_->bind_to_port(host, port) ? port : -1;
}

bool HttpService::serve() { return server_->listen_after_bind(); }

void HttpService::stop() { server_->stop(); }

}  // namespace activerank
