#include "ocontrol/election.h"

#include <algorithm>
#include <set>
#include <sstream>

namespace ocontrol {

namespace {

std::string join_violations(const std::vector<std::string>& v) {
  std::string out = "invalid instance";
  for (const auto& s : v) out += "; " + s;
  return out;
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> violations)
    : std::runtime_error(join_violations(violations)), violations_(std::move(violations)) {}

bool is_constructive(Variant v) { return v == Variant::ccdc || v == Variant::ccac; }
bool is_addition(Variant v) { return v == Variant::ccac || v == Variant::dcac; }
bool is_deletion(Variant v) { return !is_addition(v); }

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::ccdc: return "CCDC";
    case Variant::ccac: return "CCAC";
    case Variant::dcdc_nht: return "DCDC-NHT";
    case Variant::dcdc_ht: return "DCDC-HT";
    case Variant::dcac: return "DCAC";
  }
  return "?";
}

std::string_view to_string(System s) {
  switch (s) {
    case System::plurality: return "plurality";
    case System::qbf_e: return "qbf-E";
    case System::qbf_eprime: return "qbf-Eprime";
  }
  return "?";
}

std::string_view to_string(Decision d) {
  switch (d) {
    case Decision::kept: return "kept";
    case Decision::deleted: return "deleted";
    case Decision::in: return "in";
    case Decision::added: return "added";
    case Decision::not_added: return "not-added";
  }
  return "?";
}

std::string_view action_name(Decision d) {
  switch (d) {
    case Decision::kept: return "keep";
    case Decision::deleted: return "delete";
    case Decision::in: return "in";
    case Decision::added: return "add";
    case Decision::not_added: return "not-add";
  }
  return "?";
}

namespace {

std::string lower(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

std::optional<Variant> parse_variant(std::string_view text) {
  const std::string t = lower(text);
  if (t == "ccdc") return Variant::ccdc;
  if (t == "ccac") return Variant::ccac;
  if (t == "dcdc-nht") return Variant::dcdc_nht;
  if (t == "dcdc-ht") return Variant::dcdc_ht;
  if (t == "dcac") return Variant::dcac;
  return std::nullopt;
}

std::optional<System> parse_system(std::string_view text) {
  if (text == "plurality") return System::plurality;
  if (text == "qbf-E") return System::qbf_e;
  if (text == "qbf-Eprime") return System::qbf_eprime;
  return std::nullopt;
}

std::optional<Decision> parse_decision(std::string_view text) {
  for (Decision d : {Decision::kept, Decision::deleted, Decision::in, Decision::added,
                     Decision::not_added}) {
    if (text == to_string(d)) return d;
  }
  return std::nullopt;
}

std::optional<Decision> parse_action(std::string_view text) {
  for (Decision d : {Decision::kept, Decision::deleted, Decision::in, Decision::added,
                     Decision::not_added}) {
    if (text == action_name(d)) return d;
  }
  return std::nullopt;
}

RoleMap compute_roles(const ControlInstance& inst) {
  const std::size_t m = inst.size();
  std::vector<std::size_t> rank(m, 0);
  for (std::size_t r = 0; r < inst.sigma.size(); ++r) rank.at(inst.sigma[r]) = r;
  const std::size_t d_rank = rank.at(inst.d);
  const bool constructive = is_constructive(inst.variant);
  RoleMap roles(m, Role::bad);
  for (std::size_t a = 0; a < m; ++a) {
    const bool good = constructive ? rank[a] <= d_rank : rank[a] < d_rank;
    roles[a] = good ? Role::good : Role::bad;
  }
  return roles;
}

std::size_t budget_spent(const ControlInstance& inst) {
  return static_cast<std::size_t>(
      std::count_if(inst.decisions.begin(), inst.decisions.end(), [](Decision d) {
        return d == Decision::deleted || d == Decision::added;
      }));
}

std::vector<Cand> standing_set(const ControlInstance& inst) {
  std::vector<Cand> out;
  const std::size_t flagged = std::min(inst.decisions.size(), inst.current_index + 1);
  for (std::size_t p = 0; p < flagged; ++p) {
    const Decision dec = inst.decisions[p];
    if (dec == Decision::kept || dec == Decision::in || dec == Decision::added) {
      out.push_back(inst.presentation[p]);
    }
  }
  return out;
}

Vote mask_vote(std::span<const Cand> vote, std::span<const Cand> standing) {
  Vote out;
  out.reserve(standing.size());
  for (Cand c : vote) {
    if (std::find(standing.begin(), standing.end(), c) != standing.end()) out.push_back(c);
  }
  if (out.size() != standing.size()) {
    throw MalformedInput("mask_vote: standing set contains a candidate absent from the vote");
  }
  return out;
}

std::vector<std::size_t> plurality_scores(std::span<const Cand> standing,
                                          std::span<const Vote> masked_votes) {
  std::vector<std::size_t> scores(standing.size(), 0);
  if (standing.empty()) return scores;
  const Cand max_id = *std::max_element(standing.begin(), standing.end());
  std::vector<int> slot(static_cast<std::size_t>(max_id) + 1, -1);
  for (std::size_t i = 0; i < standing.size(); ++i) slot[standing[i]] = static_cast<int>(i);
  for (const Vote& v : masked_votes) {
    if (v.size() != standing.size()) {
      throw MalformedInput("plurality: masked vote does not cover the standing set");
    }
    std::vector<bool> seen(standing.size(), false);
    for (Cand c : v) {
      if (c > max_id || slot[c] < 0 || seen[static_cast<std::size_t>(slot[c])]) {
        throw MalformedInput("plurality: masked vote is not a permutation of the standing set");
      }
      seen[static_cast<std::size_t>(slot[c])] = true;
    }
    ++scores[static_cast<std::size_t>(slot[v.front()])];
  }
  return scores;
}

std::vector<Cand> plurality_winners(std::span<const Cand> standing,
                                    std::span<const Vote> masked_votes) {
  const auto scores = plurality_scores(standing, masked_votes);
  std::vector<Cand> winners;
  if (standing.empty()) return winners;
  const std::size_t best = *std::max_element(scores.begin(), scores.end());
  for (std::size_t i = 0; i < standing.size(); ++i) {
    if (scores[i] == best) winners.push_back(standing[i]);
  }
  return winners;
}

bool goal_satisfied(Variant variant, std::span<const Cand> winners, const RoleMap& roles) {
  if (is_constructive(variant)) {
    return std::any_of(winners.begin(), winners.end(),
                       [&](Cand w) { return roles.at(w) == Role::good; });
  }
  return std::none_of(winners.begin(), winners.end(),
                      [&](Cand w) { return roles.at(w) == Role::bad; });
}

std::optional<std::string> illegal_action_reason(const ControlInstance& inst,
                                                 std::size_t position, Decision action) {
  const Cand cand = inst.presentation.at(position);
  const std::size_t limit = std::min(position, inst.decisions.size());
  std::size_t spent = 0;
  for (std::size_t p = 0; p < limit; ++p) {
    if (inst.decisions[p] == Decision::deleted || inst.decisions[p] == Decision::added) ++spent;
  }

  if (is_addition(inst.variant)) {
    const bool spoiler = inst.spoiler.at(cand);
    if (!spoiler) {
      if (action == Decision::in) return std::nullopt;
      return "qualified candidates are certainly in the election; only 'in' applies";
    }
    if (action == Decision::not_added) return std::nullopt;
    if (action != Decision::added) return "spoiler candidates can only be added or not added";
    if (spent >= inst.budget) return "addition bound exhausted";
    return std::nullopt;
  }

  if (action == Decision::kept) return std::nullopt;
  if (action != Decision::deleted) return "deletion variants only allow keep or delete";
  if (spent >= inst.budget) return "deletion bound exhausted";
  if (inst.variant == Variant::ccdc) return std::nullopt;

  const RoleMap roles = compute_roles(inst);
  if (roles[cand] == Role::good) return std::nullopt;
  if (inst.variant == Variant::dcdc_ht) {
    return "hand-tied chair may never delete a candidate who is d or worse";
  }
  // Non-hand-tied: some other bad roster member must remain undeleted.
  std::vector<bool> deleted(inst.size(), false);
  for (std::size_t p = 0; p < limit; ++p) {
    if (inst.decisions[p] == Decision::deleted) deleted[inst.presentation[p]] = true;
  }
  for (Cand a = 0; a < inst.size(); ++a) {
    if (a != cand && roles[a] == Role::bad && !deleted[a]) return std::nullopt;
  }
  return "non-hand-tied chair may delete some, but never all, of the candidates who are d "
         "or worse";
}

std::vector<Decision> legal_chair_actions(const ControlInstance& inst, std::size_t position) {
  static constexpr Decision kDeletion[] = {Decision::kept, Decision::deleted};
  static constexpr Decision kAddition[] = {Decision::in, Decision::not_added, Decision::added};
  std::vector<Decision> out;
  const auto& options = is_addition(inst.variant) ? std::span<const Decision>(kAddition)
                                                  : std::span<const Decision>(kDeletion);
  for (Decision d : options) {
    if (!illegal_action_reason(inst, position, d)) out.push_back(d);
  }
  return out;
}

std::vector<Decision> legal_chair_actions(const ControlInstance& inst) {
  return legal_chair_actions(inst, inst.current_index);
}

namespace {

bool is_permutation_of(std::span<const Cand> seq, std::size_t m) {
  if (seq.size() != m) return false;
  std::vector<bool> seen(m, false);
  for (Cand c : seq) {
    if (c >= m || seen[c]) return false;
    seen[c] = true;
  }
  return true;
}

std::vector<std::string> validate_impl(const ControlInstance& inst, bool allow_current_flag) {
  std::vector<std::string> errors;
  const std::size_t m = inst.size();
  if (m == 0) {
    errors.emplace_back("candidates: roster is empty");
    return errors;
  }
  std::set<std::string> ids;
  for (const auto& id : inst.candidates) {
    if (id.empty()) errors.emplace_back("candidates: empty candidate id");
    if (!ids.insert(id).second) errors.push_back("candidates: duplicate id '" + id + "'");
  }
  if (inst.spoiler.size() != m) {
    errors.emplace_back("spoilers: spoiler flags do not cover the roster");
    return errors;
  }
  if (is_deletion(inst.variant) &&
      std::any_of(inst.spoiler.begin(), inst.spoiler.end(), [](bool s) { return s; })) {
    errors.emplace_back("spoilers: only addition variants have spoilers");
  }
  if (!is_permutation_of(inst.presentation, m)) {
    errors.emplace_back("presentation: not a permutation of the candidates");
  }
  if (!is_permutation_of(inst.sigma, m)) {
    errors.emplace_back("sigma: not a strict total order over the candidates");
  }
  if (inst.d >= m) errors.emplace_back("d: not a roster candidate");
  if (inst.current_index >= m) errors.emplace_back("current: index outside the presentation");
  if (!errors.empty()) return errors;

  const std::size_t flags = inst.decisions.size();
  const bool flag_ok = flags == inst.current_index ||
                       (allow_current_flag && flags == inst.current_index + 1);
  if (!flag_ok) {
    std::ostringstream os;
    os << "decisions: expected " << inst.current_index << " flags, got " << flags;
    errors.push_back(os.str());
    return errors;
  }

  if (inst.votes.size() != inst.num_voters) {
    errors.emplace_back("votes: count differs from num_voters");
  }
  const std::size_t revealed = inst.current_index + 1;
  std::vector<bool> in_prefix(m, false);
  for (std::size_t p = 0; p < revealed; ++p) in_prefix[inst.presentation[p]] = true;
  for (std::size_t v = 0; v < inst.votes.size(); ++v) {
    const Vote& vote = inst.votes[v];
    bool ok = vote.size() == revealed;
    std::vector<bool> seen(m, false);
    for (Cand c : vote) {
      if (!ok) break;
      if (c >= m || !in_prefix[c] || seen[c]) ok = false;
      else seen[c] = true;
    }
    if (!ok) {
      errors.push_back("votes[" + std::to_string(v) +
                       "]: not a permutation of the revealed prefix");
    }
  }

  // Replay the history: every flag must have been a legal action when taken.
  for (std::size_t p = 0; p < flags; ++p) {
    if (auto why = illegal_action_reason(inst, p, inst.decisions[p])) {
      errors.push_back("decisions[" + inst.candidates[inst.presentation[p]] + "]: " + *why);
    }
  }
  return errors;
}

}  // namespace

std::vector<std::string> validate_instance(const ControlInstance& inst) {
  return validate_impl(inst, false);
}

std::vector<std::string> validate_state(const ControlInstance& inst) {
  return validate_impl(inst, true);
}

WinnerRule plurality_rule() {
  return [](std::span<const std::string>, std::span<const Cand> standing,
            std::span<const Vote> masked) { return plurality_winners(standing, masked); };
}

std::vector<Cand> current_winners(const ControlInstance& inst, const WinnerRule& rule) {
  const auto standing = standing_set(inst);
  std::vector<Vote> masked;
  masked.reserve(inst.votes.size());
  for (const Vote& v : inst.votes) masked.push_back(mask_vote(v, standing));
  return rule(inst.candidates, standing, masked);
}

}  // namespace ocontrol
