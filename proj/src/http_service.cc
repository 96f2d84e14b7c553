#include "ocontrol/http_service.h"

#include "httplib.h"

namespace ocontrol {

namespace {

void reply(httplib::Response& res, int status, const Json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

template <typename Fn>
void guarded(httplib::Response& res, Fn&& fn) {
  try {
    reply(res, 200, fn());
  } catch (const SessionError& e) {
    reply(res, e.status(), Json{{"error", e.what()}});
  } catch (const ValidationError& e) {
    reply(res, 409, Json{{"error", e.what()}});
  } catch (const nlohmann::json::exception& e) {
    reply(res, 400, Json{{"error", e.what()}});
  } catch (const std::exception& e) {
    reply(res, 500, Json{{"error", e.what()}});
  }
}

Json parse_body(const httplib::Request& req) {
  try {
    return Json::parse(req.body);
  } catch (const nlohmann::json::parse_error& e) {
    throw SessionError(400, std::string("malformed JSON body: ") + e.what());
  }
}

}  // namespace

void register_routes(httplib::Server& server, SessionStore& store) {
  server.Post("/sessions", [&store](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { return store.create(parse_body(req)); });
  });
  server.Get(R"(/sessions/([^/]+))", [&store](const httplib::Request& req, httplib::Response& res) {
    const bool hint = req.has_param("hint") && req.get_param_value("hint") != "0";
    guarded(res, [&] { return store.view(req.matches[1], hint); });
  });
  server.Post(R"(/sessions/([^/]+)/chair)",
              [&store](const httplib::Request& req, httplib::Response& res) {
                guarded(res, [&] { return store.chair(req.matches[1], parse_body(req)); });
              });
  server.Post(R"(/sessions/([^/]+)/universe)",
              [&store](const httplib::Request& req, httplib::Response& res) {
                guarded(res, [&] { return store.universe(req.matches[1], parse_body(req)); });
              });
  server.Get(R"(/sessions/([^/]+)/hint)",
             [&store](const httplib::Request& req, httplib::Response& res) {
               guarded(res, [&] { return store.hint(req.matches[1]); });
             });
}

bool serve_sessions(SessionStore& store, const std::string& host, int port) {
  httplib::Server server;
  register_routes(server, store);
  return server.listen(host, port);
}

}  // namespace ocontrol
