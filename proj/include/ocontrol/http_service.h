#pragma once

// HTTP front end for SessionStore.
//
//   POST /sessions                  instance document  -> {id, view}
//   GET  /sessions/{id}[?hint=1]                       -> view
//   POST /sessions/{id}/chair       {"action": ...}    -> view
//   POST /sessions/{id}/universe    {"ranks": [...]} | {"mode": "adversarial"} -> view
//   GET  /sessions/{id}/hint                           -> {hints, exact}
//
// Errors are {"error": message} with 400 (bad body), 404 (unknown session),
// 409 (illegal move) or 503 (oracle guard exceeded).

#include "ocontrol/session.h"

namespace httplib {
class Server;
}

namespace ocontrol {

void register_routes(httplib::Server& server, SessionStore& store);

/// Blocks serving on `host:port` until the server is stopped.
bool serve_sessions(SessionStore& store, const std::string& host, int port);

}  // namespace ocontrol
