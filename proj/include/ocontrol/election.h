#pragma once

// Snapshot model for online candidate control in candidate-sequential
// elections: instances, roles, legality of chair actions, vote masking,
// plurality winners and goal evaluation.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ocontrol {

/// Index of a candidate in the instance roster.
using Cand = std::uint32_t;

/// A strict linear order, most preferred first.
using Vote = std::vector<Cand>;

enum class Variant { ccdc, ccac, dcdc_nht, dcdc_ht, dcac };

enum class System { plurality, qbf_e, qbf_eprime };

/// History flag / chair action. Deletion variants use kept/deleted,
/// addition variants use in (qualified) and added/not_added (spoilers).
enum class Decision { kept, deleted, in, added, not_added };

enum class Role { good, bad };

class MalformedInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An instance or game state that breaks a model invariant.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

bool is_constructive(Variant v);
bool is_addition(Variant v);
bool is_deletion(Variant v);

std::string_view to_string(Variant v);
std::string_view to_string(System s);
std::string_view to_string(Decision d);
std::optional<Variant> parse_variant(std::string_view text);
std::optional<System> parse_system(std::string_view text);
std::optional<Decision> parse_decision(std::string_view text);

/// Chair action names ("keep", "delete", "in", "add", "not-add").
std::string_view action_name(Decision d);
std::optional<Decision> parse_action(std::string_view text);

struct ControlInstance {
  Variant variant = Variant::ccdc;
  System system = System::plurality;
  std::vector<std::string> candidates;
  // Per roster entry; all false outside the addition variants.
  std::vector<bool> spoiler;
  std::size_t num_voters = 0;
  std::vector<Cand> presentation;
  std::size_t current_index = 0;
  std::size_t budget = 0;
  std::vector<Cand> sigma;  // best first
  Cand d = 0;
  // One flag per presentation position already decided. A snapshot has
  // exactly current_index flags; game states may also carry the flag of the
  // current candidate.
  std::vector<Decision> decisions;
  std::vector<Vote> votes;  // each over presentation[0..current_index]

  std::size_t size() const { return candidates.size(); }
  Cand current() const { return presentation.at(current_index); }

  friend bool operator==(const ControlInstance&, const ControlInstance&) = default;
};

/// Role of every roster candidate, indexed by Cand.
using RoleMap = std::vector<Role>;

RoleMap compute_roles(const ControlInstance& inst);

/// Deleted (resp. added) flags among the recorded decisions.
std::size_t budget_spent(const ControlInstance& inst);

/// Revealed candidates that are still standing given the recorded flags.
/// The current candidate counts as standing only once it carries a flag
/// that keeps it in.
std::vector<Cand> standing_set(const ControlInstance& inst);

Vote mask_vote(std::span<const Cand> vote, std::span<const Cand> standing);

/// First-place counts over a standing set; votes must already be masked.
/// Returned vector is indexed by position in `standing`.
std::vector<std::size_t> plurality_scores(std::span<const Cand> standing,
                                          std::span<const Vote> masked_votes);

/// Co-winners under plurality (no tie-breaking). With zero voters every
/// standing candidate wins with score zero.
std::vector<Cand> plurality_winners(std::span<const Cand> standing,
                                    std::span<const Vote> masked_votes);

bool goal_satisfied(Variant variant, std::span<const Cand> winners, const RoleMap& roles);

/// Legal chair actions for the candidate at `position` in the presentation,
/// given only the flags recorded before it.
std::vector<Decision> legal_chair_actions(const ControlInstance& inst, std::size_t position);

/// Legal actions for the current candidate.
std::vector<Decision> legal_chair_actions(const ControlInstance& inst);

/// Why `action` is not legal at `position`, or nullopt if it is.
std::optional<std::string> illegal_action_reason(const ControlInstance& inst,
                                                 std::size_t position, Decision action);

/// Checks every snapshot invariant. An empty result means the instance is
/// valid. The current candidate must still await its decision.
std::vector<std::string> validate_instance(const ControlInstance& inst);

/// Like validate_instance but also admits a flag on the current candidate
/// (post-decision game states).
std::vector<std::string> validate_state(const ControlInstance& inst);

/// Winner rule: maps the standing candidates and the masked votes to the
/// winner set. `names` is the whole roster, indexed by Cand.
using WinnerRule = std::function<std::vector<Cand>(
    std::span<const std::string> names, std::span<const Cand> standing,
    std::span<const Vote> masked_votes)>;

WinnerRule plurality_rule();

/// Winners of the election formed by the standing candidates of `inst`
/// with every vote masked to them.
std::vector<Cand> current_winners(const ControlInstance& inst, const WinnerRule& rule);

}  // namespace ocontrol
