#pragma once

// Exhaustive evaluation of the alternating chair/universe game. The chair
// moves existentially, the universe (which inserts each newly revealed
// candidate into every vote) universally. Generic over the winner rule and
// used as ground truth for the polynomial deciders.

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ocontrol/election.h"

namespace ocontrol {

enum class Phase { chair_to_decide, universe_to_reveal, terminal };

struct GameState {
  ControlInstance instance;

  Phase phase() const { return phase_of(instance); }
  static Phase phase_of(const ControlInstance& inst);

  friend bool operator==(const GameState&, const GameState&) = default;
};

/// One insertion rank per voter; rank r puts the new candidate at position r
/// of that voter's current order (0 = top).
using UniverseExtension = std::vector<std::size_t>;

class SizeLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<UniverseExtension> enumerate_universe_extensions(const GameState& state);

GameState apply_chair_action(const GameState& state, Decision action);
GameState apply_universe_extension(const GameState& state, const UniverseExtension& ext);

struct Strategy;

struct StrategyReply {
  UniverseExtension extension;
  Strategy* next() { return next_.get(); }
  const Strategy* next() const { return next_.get(); }

  StrategyReply(UniverseExtension ext, Strategy next);
  StrategyReply(const StrategyReply& other);
  StrategyReply& operator=(const StrategyReply& other);
  StrategyReply(StrategyReply&&) noexcept = default;
  StrategyReply& operator=(StrategyReply&&) noexcept = default;
  ~StrategyReply();

 private:
  std::unique_ptr<Strategy> next_;
};

/// Chair strategy rooted at a game state. At a chair node `action` holds the
/// move; `replies` then covers every universe extension that follows it (in
/// enumeration order). A terminal state yields the empty strategy.
struct Strategy {
  std::optional<Decision> action;
  std::vector<StrategyReply> replies;

  bool empty() const { return !action && replies.empty(); }
  std::size_t leaf_count() const;
};

struct Verdict {
  bool forced_win = false;
  std::optional<Strategy> strategy;
  std::size_t nodes_visited = 0;
};

struct OracleOptions {
  bool memoize = true;
  bool record_strategy = false;
  double node_guard = 1e8;
};

/// Worst-case number of game-tree nodes below `state`.
double estimate_game_nodes(const GameState& state);

/// Throws ValidationError for invalid states and SizeLimitError when the
/// node estimate exceeds the guard.
Verdict solve_forced_win(const GameState& state, const WinnerRule& rule,
                         const OracleOptions& options = {});

/// Convenience overload for snapshots.
Verdict solve_forced_win(const ControlInstance& inst, const WinnerRule& rule,
                         const OracleOptions& options = {});

std::optional<Strategy> extract_strategy(const Verdict& verdict);

struct ReplayResult {
  std::size_t lines = 0;
  std::size_t satisfied = 0;
  std::size_t illegal_moves = 0;
  bool all_satisfied() const { return lines > 0 && satisfied == lines && illegal_moves == 0; }
};

/// Plays `strategy` against every universe line from `state`.
ReplayResult replay_strategy(const GameState& state, const Strategy& strategy,
                             const WinnerRule& rule);

bool terminal_goal(const GameState& state, const WinnerRule& rule);

}  // namespace ocontrol
