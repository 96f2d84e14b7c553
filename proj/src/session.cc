#include "ocontrol/session.h"

#include "ocontrol/qbf.h"

namespace ocontrol {

std::string_view to_string(Phase phase) {
  switch (phase) {
    case Phase::chair_to_decide: return "chair-to-decide";
    case Phase::universe_to_reveal: return "universe-to-reveal";
    case Phase::terminal: return "terminal";
  }
  return "?";
}

UniverseExtension heuristic_extension(const GameState& state) {
  const auto& s = state.instance;
  const Cand incoming = s.presentation.at(s.current_index + 1);
  const bool good = compute_roles(s)[incoming] == Role::good;
  UniverseExtension ext;
  for (const Vote& v : s.votes) ext.push_back(good ? v.size() : 0);
  return ext;
}

namespace {

void ensure_valid(const GameState& state) {
  if (auto violations = validate_state(state.instance); !violations.empty()) {
    throw ValidationError(std::move(violations));
  }
}

}  // namespace

std::shared_ptr<SessionStore::Session> SessionStore::find(const std::string& id) const {
  std::shared_lock lock(map_mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw SessionError(404, "unknown session '" + id + "'");
  return it->second;
}

Json SessionStore::create(const Json& document) {
  ControlInstance inst;
  try {
    inst = load_instance(document);
  } catch (const DocumentError& e) {
    throw SessionError(400, e.what());
  } catch (const ValidationError& e) {
    throw SessionError(400, e.what());
  }
  auto session = std::make_shared<Session>();
  session->state = GameState{std::move(inst)};
  std::string id;
  {
    std::unique_lock lock(map_mutex_);
    id = "s" + std::to_string(next_id_++);
    sessions_.emplace(id, session);
  }
  std::lock_guard guard(session->mutex);
  return Json{{"id", id}, {"view", render(id, *session, false)}};
}

Json SessionStore::view(const std::string& id, bool with_hint) const {
  auto session = find(id);
  std::lock_guard guard(session->mutex);
  return render(id, *session, with_hint);
}

GameState SessionStore::state(const std::string& id) const {
  auto session = find(id);
  std::lock_guard guard(session->mutex);
  return session->state;
}

Json SessionStore::chair(const std::string& id, const Json& body) {
  auto session = find(id);
  std::lock_guard guard(session->mutex);
  GameState& state = session->state;
  if (!body.is_object() || !body.contains("action") || !body["action"].is_string()) {
    throw SessionError(400, "body must be {\"action\": <name>}");
  }
  const std::string name = body["action"].get<std::string>();
  auto action = parse_action(name);
  if (!action) throw SessionError(400, "unknown action '" + name + "'");
  if (state.phase() != Phase::chair_to_decide) {
    throw SessionError(409, "it is not the chair's turn (phase " +
                                std::string(to_string(state.phase())) + ")");
  }
  const auto& inst = state.instance;
  if (auto why = illegal_action_reason(inst, inst.current_index, *action)) {
    throw SessionError(409, *why);
  }
  const std::string candidate = inst.candidates[inst.current()];
  GameState next = apply_chair_action(state, *action);
  ensure_valid(next);
  state = std::move(next);
  session->history.push_back(
      {{"actor", "chair"}, {"candidate", candidate}, {"action", std::string(action_name(*action))}});
  return render(id, *session, false);
}

Json SessionStore::universe(const std::string& id, const Json& body) {
  auto session = find(id);
  std::lock_guard guard(session->mutex);
  GameState& state = session->state;
  if (state.phase() != Phase::universe_to_reveal) {
    throw SessionError(409, "it is not the universe's turn (phase " +
                                std::string(to_string(state.phase())) + ")");
  }
  if (!body.is_object()) throw SessionError(400, "body must be a JSON object");

  UniverseExtension ext;
  bool exact = true;
  std::string mode = "explicit";
  if (body.contains("ranks")) {
    const Json& ranks = body["ranks"];
    if (!ranks.is_array()) throw SessionError(400, "ranks must be an array");
    if (ranks.size() != state.instance.num_voters) {
      throw SessionError(409, "expected one insertion rank per voter (" +
                                  std::to_string(state.instance.num_voters) + ")");
    }
    for (std::size_t v = 0; v < ranks.size(); ++v) {
      if (!ranks[v].is_number_integer() || ranks[v].get<long long>() < 0) {
        throw SessionError(409, "rank for voter " + std::to_string(v) + " is not a nonnegative integer");
      }
      const auto r = ranks[v].get<std::size_t>();
      if (r > state.instance.votes[v].size()) {
        throw SessionError(409, "rank " + std::to_string(r) + " out of bounds for voter " +
                                    std::to_string(v) + " (max " +
                                    std::to_string(state.instance.votes[v].size()) + ")");
      }
      ext.push_back(r);
    }
  } else if (body.value("mode", std::string()) == "adversarial") {
    mode = "adversarial";
    const WinnerRule rule = winner_rule_for(state.instance.system);
    OracleOptions options;
    options.node_guard = node_guard_;
    if (estimate_game_nodes(state) <= node_guard_) {
      const auto all = enumerate_universe_extensions(state);
      ext = all.front();
      for (const auto& candidate : all) {
        GameState child = apply_universe_extension(state, candidate);
        if (!solve_forced_win(child, rule, options).forced_win) {
          ext = candidate;
          break;
        }
      }
    } else {
      ext = heuristic_extension(state);
      exact = false;
    }
  } else {
    throw SessionError(400, "body must give \"ranks\" or \"mode\": \"adversarial\"");
  }

  const std::string candidate =
      state.instance.candidates[state.instance.presentation[state.instance.current_index + 1]];
  GameState next = apply_universe_extension(state, ext);
  ensure_valid(next);
  state = std::move(next);
  session->history.push_back({{"actor", "universe"},
                              {"candidate", candidate},
                              {"ranks", ext},
                              {"mode", mode},
                              {"exact", exact}});
  return render(id, *session, false);
}

Json SessionStore::hint(const std::string& id) const {
  auto session = find(id);
  std::lock_guard guard(session->mutex);
  return hint_locked(*session);
}

Json SessionStore::hint_locked(const Session& s) const {
  const GameState& state = s.state;
  if (state.phase() != Phase::chair_to_decide) {
    throw SessionError(409, "hints are only available when the chair is to decide");
  }
  if (estimate_game_nodes(state) > node_guard_) {
    throw SessionError(503, "position too large for an exact hint (oracle guard " +
                                std::to_string(node_guard_) + " nodes)");
  }
  const WinnerRule rule = winner_rule_for(state.instance.system);
  OracleOptions options;
  options.node_guard = node_guard_;
  Json hints = Json::object();
  for (Decision action : legal_chair_actions(state.instance)) {
    const GameState child = apply_chair_action(state, action);
    hints[std::string(action_name(action))] = solve_forced_win(child, rule, options).forced_win;
  }
  return Json{{"hints", hints}, {"exact", true}};
}

Json SessionStore::render(const std::string& id, const Session& s, bool with_hint) const {
  const GameState& state = s.state;
  const ControlInstance& inst = state.instance;
  const Phase phase = state.phase();

  const auto standing = standing_set(inst);
  std::vector<Vote> masked;
  for (const Vote& v : inst.votes) masked.push_back(mask_vote(v, standing));
  const auto scores = plurality_scores(standing, masked);
  const auto winners = winner_rule_for(inst.system)(inst.candidates, standing, masked);

  Json view;
  view["id"] = id;
  view["phase"] = std::string(to_string(phase));
  view["turn"] = phase == Phase::chair_to_decide      ? "chair"
                 : phase == Phase::universe_to_reveal ? "universe"
                                                      : "none";
  view["state"] = store_instance(inst);
  Json standing_ids = Json::array();
  Json score_map = Json::object();
  for (std::size_t i = 0; i < standing.size(); ++i) {
    standing_ids.push_back(inst.candidates[standing[i]]);
    score_map[inst.candidates[standing[i]]] = scores[i];
  }
  view["standing"] = standing_ids;
  view["scores"] = score_map;
  Json winner_ids = Json::array();
  for (Cand w : winners) winner_ids.push_back(inst.candidates[w]);
  view["winners"] = winner_ids;
  const std::size_t spent = budget_spent(inst);
  view["remaining_budget"] = inst.budget > spent ? inst.budget - spent : 0;
  Json roles = Json::object();
  const RoleMap role_map = compute_roles(inst);
  for (Cand c = 0; c < inst.size(); ++c) {
    roles[inst.candidates[c]] = role_map[c] == Role::good ? "good" : "bad";
  }
  view["roles"] = roles;
  if (phase == Phase::chair_to_decide) {
    Json legal = Json::array();
    for (Decision a : legal_chair_actions(inst)) legal.push_back(std::string(action_name(a)));
    view["legal_actions"] = legal;
  }
  if (phase == Phase::terminal) {
    view["goal_satisfied"] = goal_satisfied(inst.variant, winners, role_map);
  }
  view["history"] = s.history;
  if (with_hint && phase == Phase::chair_to_decide && estimate_game_nodes(state) <= node_guard_) {
    view["hint"] = hint_locked(s)["hints"];
  }
  return view;
}

}  // namespace ocontrol
