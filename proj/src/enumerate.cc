#include "ocontrol/enumerate.h"

#include <algorithm>
#include <bit>

namespace ocontrol {

void assign_canonical_sigma(ControlInstance& inst, std::uint64_t good_mask) {
  const std::size_t m = inst.size();
  inst.sigma.clear();
  std::vector<Cand> goods;
  std::vector<Cand> bads;
  for (Cand c = 0; c < m; ++c) ((good_mask >> c) & 1U ? goods : bads).push_back(c);
  inst.sigma = goods;
  inst.sigma.insert(inst.sigma.end(), bads.begin(), bads.end());
  inst.d = is_constructive(inst.variant) ? goods.back() : bads.front();
}

namespace {

std::vector<Vote> permutations_of(std::size_t len) {
  std::vector<Vote> out;
  Vote v(len);
  for (std::size_t i = 0; i < len; ++i) v[i] = static_cast<Cand>(i);
  do {
    out.push_back(v);
  } while (std::next_permutation(v.begin(), v.end()));
  return out;
}

// Nondecreasing index tuples into `perms`, one per voter.
void for_each_profile(ControlInstance& inst, const std::vector<Vote>& perms,
                      const InstanceVisitor& visit) {
  const std::size_t n = inst.num_voters;
  std::vector<std::size_t> idx(n, 0);
  inst.votes.assign(n, Vote{});
  while (true) {
    for (std::size_t v = 0; v < n; ++v) inst.votes[v] = perms[idx[v]];
    visit(inst);
    // Advance the rightmost index that can grow, reset the tail to it.
    std::size_t v = n;
    while (v > 0 && idx[v - 1] + 1 == perms.size()) --v;
    if (v == 0) return;
    const std::size_t next = idx[v - 1] + 1;
    for (std::size_t t = v - 1; t < n; ++t) idx[t] = next;
  }
}

}  // namespace

void for_each_instance(const EnumerationBounds& bounds, const InstanceVisitor& visit) {
  for (std::size_t m = 1; m <= bounds.max_candidates; ++m) {
    std::vector<std::vector<Vote>> perms_by_len(m + 1);
    for (std::size_t len = 1; len <= m; ++len) perms_by_len[len] = permutations_of(len);
    const std::uint64_t all = (std::uint64_t{1} << m) - 1;

    for (Variant variant : bounds.variants) {
      const bool constructive = is_constructive(variant);
      const bool addition = is_addition(variant);
      for (std::size_t n = 0; n <= bounds.max_voters; ++n) {
        for (std::uint64_t good = 0; good <= all; ++good) {
          if (constructive && good == 0) continue;
          if (!constructive && good == all) continue;
          for (std::uint64_t spoilers = 0; spoilers <= (addition ? all : 0); ++spoilers) {
            ControlInstance inst;
            inst.variant = variant;
            for (std::size_t i = 0; i < m; ++i) {
              inst.candidates.push_back("c" + std::to_string(i + 1));
              inst.presentation.push_back(static_cast<Cand>(i));
            }
            inst.spoiler.assign(m, false);
            for (std::size_t i = 0; i < m; ++i) inst.spoiler[i] = ((spoilers >> i) & 1U) != 0;
            inst.num_voters = n;
            assign_canonical_sigma(inst, good);

            const std::size_t max_budget =
                addition ? static_cast<std::size_t>(std::popcount(spoilers)) : m;
            for (std::size_t k = 0; k <= max_budget; ++k) {
              inst.budget = k;
              for (std::size_t ci = 0; ci < m; ++ci) {
                inst.current_index = ci;
                // Each decided position has one or two possible flags.
                std::vector<std::size_t> choice(ci, 0);
                auto options = [&](std::size_t p) -> std::vector<Decision> {
                  if (!addition) return {Decision::kept, Decision::deleted};
                  if (inst.spoiler[p]) return {Decision::not_added, Decision::added};
                  return {Decision::in};
                };
                while (true) {
                  inst.decisions.clear();
                  for (std::size_t p = 0; p < ci; ++p) inst.decisions.push_back(options(p)[choice[p]]);
                  // Votes do not affect history legality; check with a placeholder profile.
                  inst.votes.assign(n, perms_by_len[ci + 1].front());
                  if (validate_instance(inst).empty()) {
                    for_each_profile(inst, perms_by_len[ci + 1], visit);
                  }
                  std::size_t p = 0;
                  while (p < ci && ++choice[p] == options(p).size()) choice[p++] = 0;
                  if (p == ci) break;
                }
              }
            }
          }
        }
      }
    }
  }
}

std::size_t count_instances(const EnumerationBounds& bounds) {
  std::size_t count = 0;
  for_each_instance(bounds, [&](const ControlInstance&) { ++count; });
  return count;
}

}  // namespace ocontrol
