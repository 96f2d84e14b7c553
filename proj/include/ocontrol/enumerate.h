#pragma once

// Exhaustive enumeration of small validated snapshots.
//
// Candidates are named c1..cm in presentation order, so every presentation
// order is represented by the identity up to renaming. Role splits are
// enumerated directly (each realised by a canonical sigma/d), and voter
// profiles as multisets since voters are interchangeable.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "ocontrol/election.h"

namespace ocontrol {

struct EnumerationBounds {
  std::size_t max_candidates = 0;
  std::size_t max_voters = 0;
  std::vector<Variant> variants;
};

using InstanceVisitor = std::function<void(const ControlInstance&)>;

void for_each_instance(const EnumerationBounds& bounds, const InstanceVisitor& visit);

std::size_t count_instances(const EnumerationBounds& bounds);

/// Canonical sigma (goods first, then bads, each by roster index) and pivot
/// realising the role split `good_mask` for `variant`.
void assign_canonical_sigma(ControlInstance& inst, std::uint64_t good_mask);

}  // namespace ocontrol
