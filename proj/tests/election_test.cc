#include "ocontrol/election.h"

#include <gtest/gtest.h>

#include <random>

#include "test_support.h"

namespace ocontrol {
namespace {

using testing::fixture;
using testing::random_instance;

constexpr Cand a = 0, b = 1, c = 2;

TEST(MaskVote, RestrictsPreservingOrder) {
  EXPECT_EQ(mask_vote(Vote{a, b, c}, std::vector<Cand>{a, c}), (Vote{a, c}));
  EXPECT_EQ(mask_vote(Vote{b, a}, std::vector<Cand>{a, b}), (Vote{b, a}));
  EXPECT_EQ(mask_vote(Vote{c, b, a}, std::vector<Cand>{}), Vote{});
}

TEST(MaskVote, StandingCandidateMissingFromVoteIsMalformed) {
  EXPECT_THROW(mask_vote(Vote{a, b}, std::vector<Cand>{a, c}), MalformedInput);
}

TEST(PluralityWinners, ZeroVotersAllStandingWin) {
  const std::vector<Cand> standing{a, b};
  EXPECT_EQ(plurality_winners(standing, std::vector<Vote>{}), standing);
}

TEST(PluralityWinners, ArgmaxAndTies) {
  const std::vector<Cand> standing{a, b};
  EXPECT_EQ(plurality_winners(standing, std::vector<Vote>{{a, b}, {a, b}, {b, a}}),
            std::vector<Cand>{a});
  EXPECT_EQ(plurality_winners(standing, std::vector<Vote>{{a, b}, {b, a}}), standing);
  EXPECT_TRUE(plurality_winners(std::vector<Cand>{}, std::vector<Vote>{{}, {}}).empty());
}

TEST(PluralityWinners, InconsistentDomainsAreMalformed) {
  EXPECT_THROW(plurality_winners(std::vector<Cand>{a, b}, std::vector<Vote>{{a}}), MalformedInput);
  EXPECT_THROW(plurality_winners(std::vector<Cand>{a, b}, std::vector<Vote>{{a, c}}),
               MalformedInput);
}

TEST(GoalSatisfied, EmptyWinnerSetConvention) {
  const RoleMap roles{Role::good, Role::bad};
  EXPECT_TRUE(goal_satisfied(Variant::ccdc, std::vector<Cand>{a}, roles));
  EXPECT_FALSE(goal_satisfied(Variant::ccdc, std::vector<Cand>{}, roles));
  EXPECT_TRUE(goal_satisfied(Variant::dcac, std::vector<Cand>{}, roles));
  EXPECT_FALSE(goal_satisfied(Variant::dcdc_nht, std::vector<Cand>{a, b}, roles));
}

TEST(Roles, PivotIsGoodConstructivelyAndBadDestructively) {
  ControlInstance inst = fixture("k1_ccdc.json");
  EXPECT_EQ(compute_roles(inst)[1], Role::good);  // g1 = d
  inst.variant = Variant::dcdc_nht;
  EXPECT_EQ(compute_roles(inst)[1], Role::bad);
}

TEST(LegalActions, BudgetExhaustedOnlyKeep) {
  const ControlInstance inst = fixture("k0_ccdc.json");
  EXPECT_EQ(legal_chair_actions(inst), std::vector<Decision>{Decision::kept});
  EXPECT_EQ(legal_chair_actions(fixture("k1_ccdc.json")),
            (std::vector<Decision>{Decision::kept, Decision::deleted}));
}

TEST(LegalActions, NonHandTiedCannotDeleteLastBad) {
  const ControlInstance inst = fixture("nht_last_bad.json");
  EXPECT_EQ(legal_chair_actions(inst), std::vector<Decision>{Decision::kept});
  const auto why = illegal_action_reason(inst, inst.current_index, Decision::deleted);
  ASSERT_TRUE(why.has_value());
  EXPECT_NE(why->find("never all"), std::string::npos);
}

TEST(LegalActions, HandTiedNeverDeletesBad) {
  ControlInstance inst = fixture("nht_last_bad.json");
  inst.variant = Variant::dcdc_ht;
  inst.decisions = {Decision::kept};
  EXPECT_EQ(legal_chair_actions(inst), std::vector<Decision>{Decision::kept});
}

TEST(LegalActions, QualifiedCandidateIsIn) {
  const ControlInstance inst = testing::from_json(R"({
    "variant": "CCAC", "candidates": ["q", "s"], "spoilers": ["s"], "num_voters": 0,
    "presentation": ["q", "s"], "current": "q", "budget": 1, "sigma": ["q", "s"], "d": "q",
    "decisions": {}, "votes": []})");
  EXPECT_EQ(legal_chair_actions(inst), std::vector<Decision>{Decision::in});
  EXPECT_EQ(legal_chair_actions(inst, 1),
            (std::vector<Decision>{Decision::not_added, Decision::added}));
}

TEST(Validate, WellFormedSnapshotIsOk) {
  EXPECT_TRUE(validate_instance(fixture("k1_ccdc.json")).empty());
}

TEST(Validate, HandTiedHistoryDeletingBadIsRejected) {
  ControlInstance inst = fixture("nht_last_bad.json");
  inst.variant = Variant::dcdc_ht;
  const auto violations = validate_instance(inst);
  ASSERT_EQ(violations.size(), 1U);
  EXPECT_NE(violations[0].find("hand-tied"), std::string::npos);
}

TEST(Validate, VoteOmittingRevealedCandidateIsRejected) {
  ControlInstance inst = fixture("s_vs_sg.json");
  inst.votes[0] = {0};
  const auto violations = validate_instance(inst);
  ASSERT_FALSE(violations.empty());
  EXPECT_NE(violations[0].find("votes[0]"), std::string::npos);
}

TEST(Validate, OverBudgetHistoryIsRejected) {
  EXPECT_THROW(fixture("over_budget.json"), ValidationError);
}

TEST(Validate, DumbButLegalHistoryIsAccepted) {
  // Deleting the only good candidate is pointless, not illegal.
  ControlInstance inst = fixture("k1_ccdc.json");
  inst.sigma = {0, 1};
  inst.d = 0;
  inst.current_index = 1;
  inst.decisions = {Decision::deleted};
  inst.votes = {{1, 0}};
  EXPECT_TRUE(validate_instance(inst).empty());
}

// Properties over random snapshots.

class ModelProperties : public ::testing::TestWithParam<Variant> {};

TEST_P(ModelProperties, MaskIsIdempotent) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    const auto inst = random_instance(rng, 5, 3, GetParam());
    const auto standing = standing_set(inst);
    for (const Vote& v : inst.votes) {
      const Vote once = mask_vote(v, standing);
      EXPECT_EQ(mask_vote(once, standing), once);
    }
  }
}

TEST_P(ModelProperties, WinnersNonemptyIffStandingNonempty) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const auto inst = random_instance(rng, 5, 3, GetParam());
    const auto standing = standing_set(inst);
    const auto winners = current_winners(inst, plurality_rule());
    EXPECT_EQ(winners.empty(), standing.empty());
  }
}

TEST_P(ModelProperties, FirstPlaceCountsNeverGrowUnderExtension) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 300; ++trial) {
    auto inst = random_instance(rng, 5, 3, GetParam());
    if (inst.current_index + 1 >= inst.size()) continue;
    const Cand incoming = inst.presentation[inst.current_index + 1];
    const Vote prefix(inst.presentation.begin(),
                      inst.presentation.begin() + static_cast<std::ptrdiff_t>(inst.current_index + 1));
    // Every revealed candidate x against every standing superset containing x.
    for (std::uint32_t mask = 1; mask < (1U << prefix.size()); ++mask) {
      std::vector<Cand> standing;
      for (std::size_t i = 0; i < prefix.size(); ++i) {
        if ((mask >> i) & 1U) standing.push_back(prefix[i]);
      }
      std::vector<Vote> before;
      for (const Vote& v : inst.votes) before.push_back(mask_vote(v, standing));
      const auto old_scores = plurality_scores(standing, before);

      std::vector<Vote> extended = inst.votes;
      for (Vote& v : extended) {
        const auto r = std::uniform_int_distribution<std::size_t>(0, v.size())(rng);
        v.insert(v.begin() + static_cast<std::ptrdiff_t>(r), incoming);
      }
      for (bool include_new : {false, true}) {
        std::vector<Cand> wider = standing;
        if (include_new) wider.push_back(incoming);
        std::vector<Vote> after;
        for (const Vote& v : extended) after.push_back(mask_vote(v, wider));
        const auto new_scores = plurality_scores(wider, after);
        for (std::size_t i = 0; i < standing.size(); ++i) {
          EXPECT_LE(new_scores[i], old_scores[i]);
        }
      }
    }
  }
}

TEST_P(ModelProperties, EveryFlagWasLegalWhenTaken) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 500; ++trial) {
    const auto inst = random_instance(rng, 6, 2, GetParam());
    ASSERT_TRUE(validate_instance(inst).empty());
    for (std::size_t p = 0; p < inst.decisions.size(); ++p) {
      const auto legal = legal_chair_actions(inst, p);
      EXPECT_NE(std::find(legal.begin(), legal.end(), inst.decisions[p]), legal.end());
    }
  }
}

TEST_P(ModelProperties, RandomIllegalFlagIsRejected) {
  std::mt19937_64 rng(19);
  const Decision all[] = {Decision::kept, Decision::deleted, Decision::in, Decision::added,
                          Decision::not_added};
  for (int trial = 0; trial < 500; ++trial) {
    auto inst = random_instance(rng, 6, 2, GetParam());
    if (inst.decisions.empty()) continue;
    const std::size_t p = inst.decisions.size() - 1;
    const auto legal = legal_chair_actions(inst, p);
    for (Decision d : all) {
      if (std::find(legal.begin(), legal.end(), d) != legal.end()) continue;
      inst.decisions[p] = d;
      EXPECT_FALSE(validate_instance(inst).empty());
    }
  }
}

INSTANTIATE_TEST_SUITE_P(AllVariants, ModelProperties,
                         ::testing::ValuesIn(testing::all_variants()),
                         [](const auto& info) {
                           std::string name(to_string(info.param));
                           std::erase(name, '-');
                           return name;
                         });

}  // namespace
}  // namespace ocontrol
