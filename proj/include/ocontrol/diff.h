#pragma once

// Differential harness: the polynomial plurality deciders against the
// exhaustive game oracle over every enumerated snapshot.

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "ocontrol/enumerate.h"
#include "ocontrol/instance_io.h"
#include "ocontrol/plurality_online.h"

namespace ocontrol {

struct Mismatch {
  ControlInstance instance;
  bool decider = false;
  bool oracle = false;
  std::vector<std::string> ladder_cases;  // one per branch, "action:case=win"
};

struct DiffReport {
  EnumerationBounds bounds;
  std::size_t checked = 0;
  std::size_t guard_skipped = 0;
  std::vector<Mismatch> mismatches;
  // Deciding ladder case of the winning (or last) branch, with counts.
  std::map<std::string, std::size_t> case_counts;
  // Instances where the literal prose ladder disagrees with the corrected one,
  // keyed by the corrected ladder case that discriminates. The oracle sides
  // with the corrected ladder on every counted instance unless it is also a
  // mismatch.
  std::map<std::string, std::size_t> prose_discrepancies;
  double wall_seconds = 0.0;
};

struct DiffOptions {
  double node_guard = 1e8;
  std::size_t keep_mismatches = 50;
};

DiffReport run_diff(const EnumerationBounds& bounds, const DiffOptions& options = {});

/// Report as JSON; wall time is included only when `with_timing` is set so
/// that reports of identical bounds compare equal.
Json report_to_json(const DiffReport& report, bool with_timing = true);

}  // namespace ocontrol
