#include "ocontrol/game_oracle.h"

#include <cmath>
#include <string>
#include <unordered_map>

namespace ocontrol {

StrategyReply::StrategyReply(UniverseExtension ext, Strategy next)
    : extension(std::move(ext)), next_(std::make_unique<Strategy>(std::move(next))) {}

StrategyReply::StrategyReply(const StrategyReply& other)
    : extension(other.extension),
      next_(other.next_ ? std::make_unique<Strategy>(*other.next_) : nullptr) {}

StrategyReply& StrategyReply::operator=(const StrategyReply& other) {
  if (this != &other) {
    extension = other.extension;
    next_ = other.next_ ? std::make_unique<Strategy>(*other.next_) : nullptr;
  }
  return *this;
}

StrategyReply::~StrategyReply() = default;

std::size_t Strategy::leaf_count() const {
  if (replies.empty()) return 1;
  std::size_t total = 0;
  for (const auto& r : replies) total += r.next()->leaf_count();
  return total;
}

Phase GameState::phase_of(const ControlInstance& s) {
  if (s.decisions.size() <= s.current_index) return Phase::chair_to_decide;
  if (s.current_index + 1 >= s.size()) return Phase::terminal;
  return Phase::universe_to_reveal;
}

std::vector<UniverseExtension> enumerate_universe_extensions(const GameState& state) {
  if (state.phase() != Phase::universe_to_reveal) {
    throw ContractError("enumerate_universe_extensions: no candidate is awaiting its reveal");
  }
  const auto& s = state.instance;
  const std::size_t radix = s.current_index + 2;  // vote length + 1
  const std::size_t n = s.num_voters;
  std::vector<UniverseExtension> out;
  UniverseExtension ext(n, 0);
  while (true) {
    out.push_back(ext);
    std::size_t v = 0;
    while (v < n && ++ext[v] == radix) ext[v++] = 0;
    if (v == n) break;
  }
  return out;
}

GameState apply_chair_action(const GameState& state, Decision action) {
  if (state.phase() != Phase::chair_to_decide) {
    throw ContractError("apply_chair_action: the chair is not to move");
  }
  if (auto why = illegal_action_reason(state.instance, state.instance.current_index, action)) {
    throw ContractError("illegal chair action: " + *why);
  }
  GameState next = state;
  next.instance.decisions.push_back(action);
  return next;
}

GameState apply_universe_extension(const GameState& state, const UniverseExtension& ext) {
  if (state.phase() != Phase::universe_to_reveal) {
    throw ContractError("apply_universe_extension: no candidate is awaiting its reveal");
  }
  const auto& s = state.instance;
  if (ext.size() != s.num_voters) {
    throw ContractError("universe extension must give one rank per voter");
  }
  GameState next = state;
  auto& ns = next.instance;
  const Cand incoming = ns.presentation[ns.current_index + 1];
  for (std::size_t v = 0; v < ext.size(); ++v) {
    if (ext[v] > ns.votes[v].size()) {
      throw ContractError("insertion rank " + std::to_string(ext[v]) + " out of bounds for voter " +
                          std::to_string(v));
    }
    ns.votes[v].insert(ns.votes[v].begin() + static_cast<std::ptrdiff_t>(ext[v]), incoming);
  }
  ++ns.current_index;
  return next;
}

bool terminal_goal(const GameState& state, const WinnerRule& rule) {
  const auto winners = current_winners(state.instance, rule);
  return goal_satisfied(state.instance.variant, winners, compute_roles(state.instance));
}

double estimate_game_nodes(const GameState& state) {
  const auto& s = state.instance;
  const std::size_t m = s.size();
  const double n = static_cast<double>(s.num_voters);
  // Nodes below a chair node at index i, and below the universe node after it.
  auto universe_nodes = [&](auto&& self, std::size_t i) -> double {
    if (i + 1 >= m) return 1.0;
    const double exts = std::pow(static_cast<double>(i + 2), n);
    const double chair_next = 1.0 + 2.0 * self(self, i + 1);
    return 1.0 + exts * chair_next;
  };
  switch (state.phase()) {
    case Phase::terminal: return 1.0;
    case Phase::universe_to_reveal: return universe_nodes(universe_nodes, s.current_index);
    case Phase::chair_to_decide:
      return 1.0 + 2.0 * universe_nodes(universe_nodes, s.current_index);
  }
  return 1.0;
}

namespace {

class Solver {
 public:
  Solver(const ControlInstance& inst, const WinnerRule& rule, const OracleOptions& options)
      : rule_(rule), options_(options), roles_(compute_roles(inst)) {}

  bool win(ControlInstance& s) {
    ++nodes_;
    const Phase phase = GameState::phase_of(s);
    if (phase == Phase::terminal) return terminal(s);

    std::string key;
    if (options_.memoize) {
      key = encode(s);
      if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    }
    const bool result = phase == Phase::chair_to_decide ? chair(s) : universe(s, 0);
    if (options_.memoize) memo_.emplace(std::move(key), result);
    return result;
  }

  Strategy build(const ControlInstance& start) {
    Strategy out;
    ControlInstance s = start;
    const Phase phase = GameState::phase_of(s);
    if (phase == Phase::terminal) return out;
    if (phase == Phase::chair_to_decide) {
      for (Decision a : legal_chair_actions(s)) {
        s.decisions.push_back(a);
        if (win(s)) {
          out.action = a;
          break;
        }
        s.decisions.pop_back();
      }
      if (!out.action) throw ContractError("build: no winning chair action");
      if (GameState::phase_of(s) == Phase::terminal) return out;
    }
    const GameState gs{s};
    for (auto& ext : enumerate_universe_extensions(gs)) {
      GameState child = apply_universe_extension(gs, ext);
      out.replies.emplace_back(std::move(ext), build(child.instance));
    }
    return out;
  }

  std::size_t nodes() const { return nodes_; }

 private:
  bool terminal(const ControlInstance& s) {
    const auto standing = standing_set(s);
    std::vector<Vote> masked;
    masked.reserve(s.votes.size());
    for (const Vote& v : s.votes) masked.push_back(mask_vote(v, standing));
    const auto winners = rule_(s.candidates, standing, masked);
    return goal_satisfied(s.variant, winners, roles_);
  }

  bool chair(ControlInstance& s) {
    for (Decision a : legal_chair_actions(s)) {
      s.decisions.push_back(a);
      const bool w = win(s);
      s.decisions.pop_back();
      if (w) return true;
    }
    return false;
  }

  // Inserts the next candidate voter by voter; every completed extension
  // must lead to a chair win.
  bool universe(ControlInstance& s, std::size_t voter) {
    if (voter == s.num_voters) {
      ++s.current_index;
      const bool w = win(s);
      --s.current_index;
      return w;
    }
    const Cand incoming = s.presentation[s.current_index + 1];
    Vote& vote = s.votes[voter];
    for (std::size_t r = 0; r <= vote.size(); ++r) {
      vote.insert(vote.begin() + static_cast<std::ptrdiff_t>(r), incoming);
      const bool w = universe(s, voter + 1);
      vote.erase(vote.begin() + static_cast<std::ptrdiff_t>(r));
      if (!w) return false;
    }
    return true;
  }

  static std::string encode(const ControlInstance& s) {
    std::string key;
    key.reserve(2 + s.decisions.size() + s.votes.size() * (s.current_index + 1) * 2);
    key.push_back(static_cast<char>(s.current_index));
    key.push_back(static_cast<char>(s.decisions.size()));
    for (Decision d : s.decisions) key.push_back(static_cast<char>(d));
    for (const Vote& v : s.votes) {
      for (Cand c : v) {
        key.push_back(static_cast<char>(c & 0xff));
        key.push_back(static_cast<char>((c >> 8) & 0xff));
      }
    }
    return key;
  }

  const WinnerRule& rule_;
  OracleOptions options_;
  RoleMap roles_;
  std::unordered_map<std::string, bool> memo_;
  std::size_t nodes_ = 0;
};

}  // namespace

Verdict solve_forced_win(const GameState& state, const WinnerRule& rule,
                         const OracleOptions& options) {
  if (auto violations = validate_state(state.instance); !violations.empty()) {
    throw ValidationError(std::move(violations));
  }
  const double estimate = estimate_game_nodes(state);
  if (estimate > options.node_guard) {
    throw SizeLimitError("game tree estimate " + std::to_string(estimate) +
                         " nodes exceeds the oracle guard of " +
                         std::to_string(options.node_guard));
  }
  Solver solver(state.instance, rule, options);
  ControlInstance scratch = state.instance;
  Verdict verdict;
  verdict.forced_win = solver.win(scratch);
  if (verdict.forced_win && options.record_strategy) {
    verdict.strategy = solver.build(state.instance);
  }
  verdict.nodes_visited = solver.nodes();
  return verdict;
}

Verdict solve_forced_win(const ControlInstance& inst, const WinnerRule& rule,
                         const OracleOptions& options) {
  if (auto violations = validate_instance(inst); !violations.empty()) {
    throw ValidationError(std::move(violations));
  }
  return solve_forced_win(GameState{inst}, rule, options);
}

std::optional<Strategy> extract_strategy(const Verdict& verdict) {
  if (!verdict.forced_win) return std::nullopt;
  return verdict.strategy;
}

namespace {

void replay(const GameState& state, const Strategy& strategy, const WinnerRule& rule,
            ReplayResult& result) {
  GameState cur = state;
  if (cur.phase() == Phase::chair_to_decide) {
    if (!strategy.action ||
        illegal_action_reason(cur.instance, cur.instance.current_index, *strategy.action)) {
      ++result.illegal_moves;
      ++result.lines;
      return;
    }
    cur = apply_chair_action(cur, *strategy.action);
  }
  if (cur.phase() == Phase::terminal) {
    ++result.lines;
    if (terminal_goal(cur, rule)) ++result.satisfied;
    return;
  }
  const auto exts = enumerate_universe_extensions(cur);
  for (std::size_t i = 0; i < exts.size(); ++i) {
    const Strategy* next = nullptr;
    if (i < strategy.replies.size() && strategy.replies[i].extension == exts[i]) {
      next = strategy.replies[i].next();
    }
    if (next == nullptr) {
      ++result.lines;  // uncovered universe move
      continue;
    }
    replay(apply_universe_extension(cur, exts[i]), *next, rule, result);
  }
}

}  // namespace

ReplayResult replay_strategy(const GameState& state, const Strategy& strategy,
                             const WinnerRule& rule) {
  ReplayResult result;
  replay(state, strategy, rule, result);
  return result;
}

}  // namespace ocontrol
