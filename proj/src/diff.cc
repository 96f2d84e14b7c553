#include "ocontrol/diff.h"

#include <chrono>

#include "ocontrol/game_oracle.h"

namespace ocontrol {

namespace {

std::string branch_label(Decision action, const LadderOutcome& outcome) {
  return std::string(action_name(action)) + ":" + std::string(to_string(outcome.decided_by)) +
         "=" + (outcome.win ? "win" : "lose");
}

// The case that settled the decision: the first winning branch, otherwise
// the last losing one.
LadderCase deciding_case(const DecisionTrace& trace) {
  for (const auto& [action, outcome] : trace.branches) {
    if (outcome.win) return outcome.decided_by;
  }
  return trace.branches.back().second.decided_by;
}

}  // namespace

DiffReport run_diff(const EnumerationBounds& bounds, const DiffOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  DiffReport report;
  report.bounds = bounds;
  const WinnerRule rule = plurality_rule();
  OracleOptions oracle_options;
  oracle_options.node_guard = options.node_guard;

  for_each_instance(bounds, [&](const ControlInstance& inst) {
    bool oracle = false;
    try {
      oracle = solve_forced_win(inst, rule, oracle_options).forced_win;
    } catch (const SizeLimitError&) {
      ++report.guard_skipped;
      return;
    }
    ++report.checked;
    DecisionTrace trace;
    const bool decided = decide_online_control(inst, &trace);
    const std::string decisive(to_string(deciding_case(trace)));
    ++report.case_counts[decisive];

    if (decide_online_control(inst, nullptr, LadderStyle::literal) != decided) {
      ++report.prose_discrepancies[decisive];
    }
    if (decided != oracle) {
      Mismatch mm;
      mm.decider = decided;
      mm.oracle = oracle;
      for (const auto& [action, outcome] : trace.branches) {
        mm.ladder_cases.push_back(branch_label(action, outcome));
      }
      if (report.mismatches.size() < options.keep_mismatches) {
        mm.instance = inst;
        report.mismatches.push_back(std::move(mm));
      } else {
        report.mismatches.push_back(Mismatch{{}, decided, oracle, std::move(mm.ladder_cases)});
      }
    }
  });
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

Json report_to_json(const DiffReport& report, bool with_timing) {
  Json j;
  Json variants = Json::array();
  for (Variant v : report.bounds.variants) variants.push_back(std::string(to_string(v)));
  j["bounds"] = {{"max_candidates", report.bounds.max_candidates},
                 {"max_voters", report.bounds.max_voters},
                 {"variants", variants}};
  j["checked"] = report.checked;
  j["guard_skipped"] = report.guard_skipped;
  j["mismatch_count"] = report.mismatches.size();
  Json mismatches = Json::array();
  for (const auto& mm : report.mismatches) {
    Json e;
    if (!mm.instance.candidates.empty()) e["instance"] = store_instance(mm.instance);
    e["decider"] = mm.decider;
    e["oracle"] = mm.oracle;
    e["ladder_cases"] = mm.ladder_cases;
    mismatches.push_back(e);
  }
  j["mismatches"] = mismatches;
  j["case_counts"] = report.case_counts;
  j["prose_discrepancies"] = report.prose_discrepancies;
  if (with_timing) j["wall_seconds"] = report.wall_seconds;
  return j;
}

}  // namespace ocontrol
