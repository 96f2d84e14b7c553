#pragma once

// Interactive play sessions: a human (or script) plays the chair, the
// universe is either driven explicitly or by the adversarial mode, and hints
// report which chair actions keep a forced win.

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <string>

#include "ocontrol/game_oracle.h"
#include "ocontrol/instance_io.h"

namespace ocontrol {

/// Errors carry the HTTP status the service maps them to.
class SessionError : public std::runtime_error {
 public:
  SessionError(int status, const std::string& what) : std::runtime_error(what), status_(status) {}
  int status() const { return status_; }

 private:
  int status_;
};

std::string_view to_string(Phase phase);

class SessionStore {
 public:
  explicit SessionStore(double node_guard = 1e8) : node_guard_(node_guard) {}

  /// Body: an instance document (snapshot). Returns {"id", "view"}.
  Json create(const Json& document);

  Json view(const std::string& id, bool with_hint = false) const;

  /// Body: {"action": "keep" | "delete" | "in" | "add" | "not-add"}.
  Json chair(const std::string& id, const Json& body);

  /// Body: {"ranks": [r, ...]} or {"mode": "adversarial"}.
  Json universe(const std::string& id, const Json& body);

  /// {"hints": {action: forced_win, ...}, "exact": true}; 503 beyond the guard.
  Json hint(const std::string& id) const;

  /// Current game state of a session (for tests and tooling).
  GameState state(const std::string& id) const;

 private:
  struct Session {
    mutable std::mutex mutex;
    GameState state;
    Json history = Json::array();
  };

  std::shared_ptr<Session> find(const std::string& id) const;
  Json render(const std::string& id, const Session& s, bool with_hint) const;
  Json hint_locked(const Session& s) const;

  double node_guard_;
  mutable std::shared_mutex map_mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::size_t next_id_ = 1;
};

/// Heuristic universe move: good newcomers to the bottom of every vote,
/// bad ones to the top.
UniverseExtension heuristic_extension(const GameState& state);

}  // namespace ocontrol
