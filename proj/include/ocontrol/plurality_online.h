#pragma once

// Polynomial-time forced-win deciders for online plurality control. The
// chair has at most two choices on the current candidate; each leaves a
// "pure" situation that a short decision ladder settles by counting future
// candidates and comparing the surplus of high-scoring good candidates with
// the absorbing capacity of future good ones.

#include <cstddef>
#include <string_view>
#include <utility>
#include <vector>

#include "ocontrol/election.h"

namespace ocontrol {

/// Post-decision state: the current candidate carries its flag.
struct PureSituation {
  Variant variant = Variant::ccdc;
  std::size_t num_voters = 0;
  std::vector<Cand> standing;
  std::vector<std::size_t> scores;  // masked first-place counts, aligned with `standing`
  RoleMap roles;
  bool all_revealed = false;
  // Unrevealed candidates the chair cannot decline for free: every future
  // candidate in deletion variants, future qualified ones in addition variants.
  std::size_t future_good = 0;
  std::size_t future_bad = 0;
  // Future spoilers (addition variants only).
  std::size_t future_good_spoilers = 0;
  std::size_t future_bad_spoilers = 0;
  std::size_t k_rem = 0;
};

enum class LadderCase {
  c_zero_voters,
  c_all_revealed,
  c_no_good_cowinner,
  c_future_bad_unavoidable,
  c_no_standing_bad,
  c_spare_covers_goods,
  c_surplus_ceiling,
  d_zero_voters,
  d_all_revealed,
  d_future_bad_unavoidable,
  d_no_standing_bad,
  d_spare_covers_goods,
  d_surplus_ceiling,
};

std::string_view to_string(LadderCase c);

struct LadderOutcome {
  bool win = false;
  LadderCase decided_by = LadderCase::c_zero_voters;
};

/// `corrected` is the ladder that matches exhaustive game search. `literal`
/// reproduces the unamended prose reading (no empty-standing condition when
/// no good co-wins, and the surplus pool counting bad members too); it exists
/// only so the differential harness can report where the two disagree.
enum class LadderStyle { corrected, literal };

/// Counts elementary steps for the polynomial-runtime check.
struct StepCounter {
  std::size_t steps = 0;
};

/// Requires a flag on the current candidate.
PureSituation make_pure_situation(const ControlInstance& state, StepCounter* counter = nullptr);

LadderOutcome analyze_pure_constructive(const PureSituation& sit,
                                        LadderStyle style = LadderStyle::corrected);

LadderOutcome analyze_pure_destructive(const PureSituation& sit);

LadderOutcome analyze_pure(const PureSituation& sit, LadderStyle style = LadderStyle::corrected);

struct DecisionTrace {
  std::vector<std::pair<Decision, LadderOutcome>> branches;
  std::size_t steps = 0;
};

/// True iff some legal action on the current candidate leaves a pure
/// situation with a forced win. Throws ValidationError on invalid input and
/// ContractError for non-plurality instances.
bool decide_online_control(const ControlInstance& inst, DecisionTrace* trace = nullptr,
                           LadderStyle style = LadderStyle::corrected);

}  // namespace ocontrol
