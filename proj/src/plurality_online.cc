#include "ocontrol/plurality_online.h"

#include <algorithm>

namespace ocontrol {

std::string_view to_string(LadderCase c) {
  switch (c) {
    case LadderCase::c_zero_voters: return "C1-zero-voters";
    case LadderCase::c_all_revealed: return "C2-all-revealed";
    case LadderCase::c_no_good_cowinner: return "C3-no-good-cowinner";
    case LadderCase::c_future_bad_unavoidable: return "C4a-future-bad-unavoidable";
    case LadderCase::c_no_standing_bad: return "C4b-no-standing-bad";
    case LadderCase::c_spare_covers_goods: return "C4c-spare-covers-goods";
    case LadderCase::c_surplus_ceiling: return "C4d-surplus-ceiling";
    case LadderCase::d_zero_voters: return "D1-zero-voters";
    case LadderCase::d_all_revealed: return "D2-all-revealed";
    case LadderCase::d_future_bad_unavoidable: return "D3-future-bad-unavoidable";
    case LadderCase::d_no_standing_bad: return "D5-no-standing-bad";
    case LadderCase::d_spare_covers_goods: return "D4a-spare-covers-goods";
    case LadderCase::d_surplus_ceiling: return "D4b-surplus-ceiling";
  }
  return "?";
}

PureSituation make_pure_situation(const ControlInstance& state, StepCounter* counter) {
  if (state.decisions.size() != state.current_index + 1) {
    throw ContractError("make_pure_situation: the current candidate has no decision yet");
  }
  std::size_t steps = 0;
  PureSituation sit;
  sit.variant = state.variant;
  sit.num_voters = state.num_voters;
  sit.roles = compute_roles(state);
  sit.standing = standing_set(state);
  sit.all_revealed = state.current_index + 1 == state.size();
  steps += state.size() * 2;

  std::vector<int> slot(state.size(), -1);
  for (std::size_t i = 0; i < sit.standing.size(); ++i) {
    slot[sit.standing[i]] = static_cast<int>(i);
  }
  sit.scores.assign(sit.standing.size(), 0);
  if (!sit.standing.empty()) {
    for (const Vote& vote : state.votes) {
      for (Cand c : vote) {
        ++steps;
        if (slot[c] >= 0) {
          ++sit.scores[static_cast<std::size_t>(slot[c])];
          break;
        }
      }
    }
  }

  const bool addition = is_addition(state.variant);
  for (std::size_t p = state.current_index + 1; p < state.size(); ++p) {
    ++steps;
    const Cand c = state.presentation[p];
    const bool good = sit.roles[c] == Role::good;
    if (addition && state.spoiler[c]) {
      ++(good ? sit.future_good_spoilers : sit.future_bad_spoilers);
    } else {
      ++(good ? sit.future_good : sit.future_bad);
    }
  }
  const std::size_t spent = budget_spent(state);
  sit.k_rem = state.budget > spent ? state.budget - spent : 0;
  if (counter != nullptr) counter->steps += steps;
  return sit;
}

namespace {

struct ScoreSummary {
  bool any_standing_good = false;
  bool any_standing_bad = false;
  std::size_t max_score = 0;
  std::size_t max_bad = 0;
  bool good_cowinner = false;
  bool bad_cowinner = false;
};

ScoreSummary summarize(const PureSituation& sit) {
  ScoreSummary s;
  for (std::size_t i = 0; i < sit.standing.size(); ++i) {
    s.max_score = std::max(s.max_score, sit.scores[i]);
    if (sit.roles[sit.standing[i]] == Role::good) {
      s.any_standing_good = true;
    } else {
      s.any_standing_bad = true;
      s.max_bad = std::max(s.max_bad, sit.scores[i]);
    }
  }
  for (std::size_t i = 0; i < sit.standing.size(); ++i) {
    if (sit.scores[i] != s.max_score) continue;
    (sit.roles[sit.standing[i]] == Role::good ? s.good_cowinner : s.bad_cowinner) = true;
  }
  return s;
}

// Chair wins iff the universe cannot push every surplus vote above
// `threshold - 1` onto the future goods it gets to keep:
// ceil(total / (|pool| + absorbers)) >= threshold.
bool surplus_survives(const PureSituation& sit, std::size_t threshold, std::size_t absorbers,
                      bool include_bad) {
  std::size_t total = 0;
  std::size_t pool = 0;
  for (std::size_t i = 0; i < sit.standing.size(); ++i) {
    if (sit.scores[i] < threshold) continue;
    if (!include_bad && sit.roles[sit.standing[i]] != Role::good) continue;
    total += sit.scores[i];
    ++pool;
  }
  if (pool == 0) return false;
  const std::size_t slots = pool + absorbers;
  return (total + slots - 1) / slots >= threshold;
}

}  // namespace

LadderOutcome analyze_pure_constructive(const PureSituation& sit, LadderStyle style) {
  const bool addition = is_addition(sit.variant);
  const ScoreSummary s = summarize(sit);

  const bool can_make_good_stand =
      sit.future_good > 0 || (addition && sit.future_good_spoilers > 0 && sit.k_rem >= 1);
  const bool bads_excludable = addition ? sit.future_bad == 0 : sit.future_bad <= sit.k_rem;

  if (sit.num_voters == 0) {
    return {s.any_standing_good || can_make_good_stand, LadderCase::c_zero_voters};
  }
  if (sit.all_revealed) return {s.good_cowinner, LadderCase::c_all_revealed};
  if (!s.good_cowinner) {
    const bool empty_ok = style == LadderStyle::literal || sit.standing.empty();
    return {empty_ok && can_make_good_stand && bads_excludable, LadderCase::c_no_good_cowinner};
  }
  if (!bads_excludable) return {false, LadderCase::c_future_bad_unavoidable};
  if (!s.any_standing_bad) return {true, LadderCase::c_no_standing_bad};

  const std::size_t spare = addition ? 0 : sit.k_rem - sit.future_bad;
  const std::size_t g = sit.future_good;
  if (spare >= g) return {true, LadderCase::c_spare_covers_goods};

  const bool win = surplus_survives(sit, s.max_bad, g - spare, style == LadderStyle::literal);
  return {win, LadderCase::c_surplus_ceiling};
}

LadderOutcome analyze_pure_destructive(const PureSituation& sit) {
  const ScoreSummary s = summarize(sit);
  const std::size_t b = sit.future_bad;

  if (sit.num_voters == 0) {
    // Deletion variants always leave some bad standing, and it co-wins.
    const bool win = sit.variant == Variant::dcac && !s.any_standing_bad && b == 0;
    return {win, LadderCase::d_zero_voters};
  }
  if (sit.all_revealed) return {!s.bad_cowinner, LadderCase::d_all_revealed};

  bool feasible = false;
  std::size_t spare = 0;
  switch (sit.variant) {
    case Variant::dcdc_nht:
      feasible = b == 0 || (sit.k_rem >= b && s.any_standing_bad);
      spare = feasible ? sit.k_rem - b : 0;
      break;
    case Variant::dcdc_ht:
      feasible = b == 0;
      spare = sit.k_rem;
      break;
    case Variant::dcac:
      feasible = b == 0;
      spare = 0;
      break;
    default:
      throw ContractError("analyze_pure_destructive: constructive variant");
  }
  if (!feasible) return {false, LadderCase::d_future_bad_unavoidable};
  if (!s.any_standing_bad) return {true, LadderCase::d_no_standing_bad};

  const std::size_t g = sit.future_good;
  if (spare >= g) return {!s.bad_cowinner, LadderCase::d_spare_covers_goods};

  // A bad tying the maximum co-wins, so goods must strictly exceed B.
  const std::size_t threshold = s.max_bad + 1;
  return {surplus_survives(sit, threshold, g - spare, false), LadderCase::d_surplus_ceiling};
}

LadderOutcome analyze_pure(const PureSituation& sit, LadderStyle style) {
  return is_constructive(sit.variant) ? analyze_pure_constructive(sit, style)
                                      : analyze_pure_destructive(sit);
}

bool decide_online_control(const ControlInstance& inst, DecisionTrace* trace,
                           LadderStyle style) {
  if (inst.system != System::plurality) {
    throw ContractError("decide_online_control: only plurality instances are supported");
  }
  if (auto violations = validate_instance(inst); !violations.empty()) {
    throw ValidationError(std::move(violations));
  }
  StepCounter counter;
  bool any = false;
  ControlInstance branch = inst;
  for (Decision action : legal_chair_actions(inst)) {
    branch.decisions.push_back(action);
    const LadderOutcome outcome = analyze_pure(make_pure_situation(branch, &counter), style);
    branch.decisions.pop_back();
    counter.steps += inst.size();
    if (trace != nullptr) trace->branches.emplace_back(action, outcome);
    any = any || outcome.win;
  }
  if (trace != nullptr) trace->steps = counter.steps;
  return any;
}

}  // namespace ocontrol
