#include "ocontrol/qbf.h"

#include <gtest/gtest.h>

#include <random>

#include "ocontrol/game_oracle.h"
#include "test_support.h"

namespace ocontrol {
namespace {

using testing::random_formula;

TEST(ParseFormula, ThreeVariableExample) {
  const Formula f = parse_formula("(x1 | ~x2) <-> (x3 & ~x3 & x3)");
  EXPECT_EQ(f.variables(), (std::vector<std::string>{"x1", "x2", "x3"}));
  EXPECT_EQ(f.canonical(), "((x1|~x2)<->((x3&~x3)&x3))");
}

TEST(ParseFormula, DanglingOperatorIsSyntaxError) {
  EXPECT_THROW(parse_formula("x1 &"), FormulaSyntaxError);
  EXPECT_THROW(parse_formula(""), FormulaSyntaxError);
  EXPECT_THROW(parse_formula("(a | b"), FormulaSyntaxError);
  EXPECT_THROW(parse_formula("a <- b"), FormulaSyntaxError);
  EXPECT_THROW(parse_formula("1x"), FormulaSyntaxError);
}

TEST(ParseFormula, DoubleNegation) {
  const Formula f = parse_formula("~~v");
  EXPECT_EQ(f.variables().size(), 1U);
  EXPECT_EQ(f.op(), Formula::Op::neg);
}

TEST(ParseFormula, PrecedenceAndAssociativity) {
  EXPECT_EQ(parse_formula("a | b & c").canonical(), "(a|(b&c))");
  EXPECT_EQ(parse_formula("a <-> b | c").canonical(), "(a<->(b|c))");
  EXPECT_EQ(parse_formula("a & b & c").canonical(), "((a&b)&c)");
  EXPECT_EQ(parse_formula("~a & b").canonical(), "(~a&b)");
}

TEST(ParseFormula, CanonicalFormRoundTrips) {
  std::mt19937_64 rng(3);
  const std::vector<std::string> vars{"w1", "w2", "w3", "w4"};
  for (int i = 0; i < 500; ++i) {
    const Formula f = random_formula(rng, vars, 4);
    EXPECT_EQ(parse_formula(f.canonical()).canonical(), f.canonical());
  }
}

TEST(EvalFormula, Examples) {
  const Formula f = parse_formula("w1 & ~w2");
  EXPECT_TRUE(eval_formula(f, {{"w1", true}, {"w2", false}}));
  EXPECT_FALSE(eval_formula(f, {{"w1", true}, {"w2", true}}));
  const Formula taut = parse_formula("x | ~x");
  EXPECT_TRUE(eval_formula(taut, {{"x", true}}));
  EXPECT_TRUE(eval_formula(taut, {{"x", false}}));
}

TEST(EvalFormula, MissingVariableIsContractError) {
  EXPECT_THROW(eval_formula(parse_formula("a & b"), {{"a", true}}), ContractError);
}

TEST(QbfTruth, Examples) {
  EXPECT_TRUE(qbf_truth(make_qbf(parse_formula("w1 | w2"))));
  EXPECT_FALSE(qbf_truth(make_qbf(parse_formula("w1 & w2"))));
  EXPECT_TRUE(qbf_truth(make_qbf(parse_formula("(w1 & w2) | w3"), {{"w1", "w2", "w3", "w4"}})));
  EXPECT_FALSE(qbf_truth(make_qbf(parse_formula("w1 <-> w2"))));
  // The existential answer must come after the universal challenge.
  const Formula match = parse_formula("w2 <-> w3");
  EXPECT_TRUE(qbf_truth(make_qbf(match, {{"w1", "w2", "w3", "w4"}})));
  EXPECT_FALSE(qbf_truth(make_qbf(match, {{"w3", "w2", "w1", "w4"}})));
}

TEST(QbfTruth, CapAndShapeChecks) {
  EXPECT_THROW(qbf_truth(make_qbf(parse_formula("a | b | c | d")), 2), QbfCapExceeded);
  EXPECT_THROW(make_qbf(parse_formula("a | b | c")), std::invalid_argument);
  EXPECT_THROW(make_qbf(parse_formula("a | b"), {{"a", "c"}}), std::invalid_argument);
}

TEST(QbfTruth, MatchesExpansionOfQuantifiers) {
  std::mt19937_64 rng(5);
  const std::vector<std::string> vars{"w1", "w2", "w3", "w4"};
  for (int i = 0; i < 300; ++i) {
    const Formula f = random_formula(rng, vars, 4);
    const QbfInstance q = make_qbf(f, vars);
    bool exists = false;
    for (int a = 0; a < 2 && !exists; ++a) {
      bool all2 = true;
      for (int b = 0; b < 2 && all2; ++b) {
        bool exists3 = false;
        for (int c = 0; c < 2 && !exists3; ++c) {
          bool all4 = true;
          for (int d = 0; d < 2 && all4; ++d) {
            all4 = eval_formula(f, {{"w1", a == 1}, {"w2", b == 1}, {"w3", c == 1}, {"w4", d == 1}});
          }
          exists3 = all4;
        }
        all2 = exists3;
      }
      exists = all2;
    }
    EXPECT_EQ(qbf_truth(q), exists) << f.canonical();
  }
}

TEST(CandidateIds, EncodeDecode) {
  const Formula f = parse_formula("w1 & ~w2");
  const std::string id = encode_candidate_id(f, 12);
  EXPECT_EQ(id, "(w1&~w2)#12");
  const auto decoded = decode_candidate_id(id);
  ASSERT_TRUE(decoded.has_value());
  EXPECT_EQ(decoded->formula, "(w1&~w2)");
  EXPECT_EQ(decoded->index, 12U);
  EXPECT_FALSE(decode_candidate_id("(w1 & ~w2)#1"));
  EXPECT_FALSE(decode_candidate_id("(w1&~w2)#01"));
  EXPECT_FALSE(decode_candidate_id("(w1&~w2)#"));
  EXPECT_FALSE(decode_candidate_id("#3"));
  EXPECT_FALSE(decode_candidate_id("plain"));
}

// E / E' rule over explicit candidate lists; standing is everyone.
class QbfRule : public ::testing::Test {
 protected:
  std::vector<Cand> winners(const std::vector<std::string>& names, const std::vector<Vote>& votes,
                            QbfFlavor flavor = QbfFlavor::e) {
    std::vector<Cand> standing;
    for (std::size_t i = 0; i < names.size(); ++i) standing.push_back(static_cast<Cand>(i));
    return winners_qbf_system(names, standing, votes, flavor);
  }
  const Formula f = parse_formula("w1 & ~w2");
  std::string id(std::size_t i) const { return encode_candidate_id(f, i); }
  const std::vector<Cand> all3{0, 1, 2};
};

TEST_F(QbfRule, TrueFormulaEveryoneWins) {
  const std::vector<Vote> one{{1, 0, 2}};
  EXPECT_EQ(winners({id(0), id(1), id(2)}, one), all3);
  EXPECT_TRUE(winners({id(0), id(1), id(2)}, one, QbfFlavor::e_prime).empty());
}

TEST_F(QbfRule, FalseFormulaEveryoneLoses) {
  const std::vector<Vote> one{{2, 0, 1}};  // (F,2) above (F,0): w2 true
  EXPECT_TRUE(winners({id(0), id(1), id(2)}, one).empty());
  EXPECT_EQ(winners({id(0), id(1), id(2)}, one, QbfFlavor::e_prime), all3);
}

TEST_F(QbfRule, AbsentOddIndexMeansFalse) {
  const Formula g = parse_formula("~w1 & ~w2");
  const std::vector<std::string> names{encode_candidate_id(g, 0), encode_candidate_id(g, 2)};
  EXPECT_EQ(winners(names, {{0, 1}}), (std::vector<Cand>{0, 1}));
}

TEST_F(QbfRule, ZeroVotersSetEvenVariablesFalse) {
  EXPECT_EQ(winners({id(0), id(1), id(2)}, {}), all3);
}

TEST_F(QbfRule, TwoVotersEveryoneLoses) {
  const std::vector<Vote> two{{1, 0, 2}, {1, 0, 2}};
  EXPECT_TRUE(winners({id(0), id(1), id(2)}, two).empty());
  EXPECT_EQ(winners({id(0), id(1), id(2)}, two, QbfFlavor::e_prime), all3);
}

TEST_F(QbfRule, OddVariableCountEveryoneLoses) {
  const Formula g = parse_formula("w1 | w2 | w3");
  std::vector<std::string> names;
  for (std::size_t i = 0; i <= 4; ++i) names.push_back(encode_candidate_id(g, i));
  EXPECT_TRUE(winners(names, {{0, 1, 2, 3, 4}}).empty());
}

TEST_F(QbfRule, MissingEvenIndexEveryoneLoses) {
  EXPECT_TRUE(winners({id(0), id(1)}, {{1, 0}}).empty());
  EXPECT_EQ(winners({id(0), id(1)}, {{1, 0}}, QbfFlavor::e_prime), (std::vector<Cand>{0, 1}));
}

TEST_F(QbfRule, DistinctFormulasEveryoneLoses) {
  const std::string other = encode_candidate_id(parse_formula("w1 | w2"), 1);
  EXPECT_TRUE(winners({id(0), other, id(2)}, {{1, 0, 2}}).empty());
}

TEST_F(QbfRule, SyntacticGarbageEveryoneLoses) {
  EXPECT_TRUE(winners({id(0), "garbage", id(2)}, {{1, 0, 2}}).empty());
  EXPECT_TRUE(winners({id(0), "(w1&)#1", id(2)}, {{1, 0, 2}}).empty());
  EXPECT_EQ(winners({"garbage"}, {}, QbfFlavor::e_prime), (std::vector<Cand>{0}));
}

TEST_F(QbfRule, EmptyStandingHasNoWinners) {
  EXPECT_TRUE(winners_qbf_system({}, {}, {}, QbfFlavor::e).empty());
  EXPECT_TRUE(winners_qbf_system({}, {}, {}, QbfFlavor::e_prime).empty());
}

std::string random_name(std::mt19937_64& rng, const std::vector<Formula>& pool) {
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  switch (pick(6)) {
    case 0: return "junk" + std::to_string(pick(100));
    case 1: {
      std::string s = encode_candidate_id(pool[pick(pool.size())], pick(6));
      s.erase(pick(s.size()), 1);
      return s;
    }
    default: return encode_candidate_id(pool[pick(pool.size())], pick(6));
  }
}

TEST(QbfRuleFuzz, AllOrNothingComplementaryAndTotal) {
  std::mt19937_64 rng(59);
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  const std::vector<std::string> vars{"w1", "w2", "w3", "w4"};
  std::vector<Formula> pool;
  for (int i = 0; i < 4; ++i) pool.push_back(random_formula(rng, {"w1", "w2"}, 2));
  pool.push_back(random_formula(rng, vars, 3));
  for (int trial = 0; trial < 10000; ++trial) {
    const std::size_t m = pick(6) + 1;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < m; ++i) names.push_back(random_name(rng, pool));
    std::vector<Cand> standing;
    for (std::size_t i = 0; i < m; ++i) {
      if (pick(4) != 0) standing.push_back(static_cast<Cand>(i));
    }
    std::vector<Vote> votes(pick(3));
    for (Vote& v : votes) {
      v = standing;
      std::shuffle(v.begin(), v.end(), rng);
    }
    std::vector<Cand> e, ep;
    ASSERT_NO_THROW(e = winners_qbf_system(names, standing, votes, QbfFlavor::e));
    ASSERT_NO_THROW(ep = winners_qbf_system(names, standing, votes, QbfFlavor::e_prime));
    EXPECT_TRUE(e.empty() || e == standing);
    EXPECT_TRUE(ep.empty() || ep == standing);
    if (!standing.empty()) EXPECT_NE(e.empty(), ep.empty());
  }
}

TEST(Reduction, AdditionTargetStructure) {
  const QbfInstance q = make_qbf(parse_formula("w1 | w2"));
  const ControlInstance inst = reduce_qbf(q, Variant::ccac);
  EXPECT_EQ(inst.system, System::qbf_e);
  EXPECT_EQ(inst.candidates,
            (std::vector<std::string>{"(w1|w2)#0", "(w1|w2)#1", "(w1|w2)#2"}));
  EXPECT_EQ(inst.spoiler, (std::vector<bool>{false, true, false}));
  EXPECT_EQ(inst.budget, 1U);
  EXPECT_EQ(inst.sigma, (std::vector<Cand>{2, 1, 0}));
  EXPECT_EQ(inst.d, 0U);
  EXPECT_EQ(inst.presentation, (std::vector<Cand>{0, 1, 2}));
  EXPECT_EQ(inst.current_index, 1U);
  EXPECT_EQ(inst.decisions, std::vector<Decision>{Decision::in});
  EXPECT_EQ(inst.votes, std::vector<Vote>{(Vote{0, 1})});
  EXPECT_TRUE(validate_instance(inst).empty());
}

TEST(Reduction, DeletionTargetStructure) {
  const QbfInstance q = make_qbf(parse_formula("w1 | w2"));
  const ControlInstance inst = reduce_qbf(q, Variant::ccdc);
  EXPECT_EQ(inst.spoiler, (std::vector<bool>{false, false, false}));
  EXPECT_EQ(inst.budget, 1U);
  EXPECT_EQ(inst.decisions, std::vector<Decision>{Decision::kept});
  EXPECT_TRUE(validate_instance(inst).empty());
  for (Variant v : {Variant::dcdc_nht, Variant::dcdc_ht, Variant::dcac}) {
    const ControlInstance d = reduce_qbf(q, v);
    EXPECT_EQ(d.system, System::qbf_eprime);
    EXPECT_TRUE(validate_instance(d).empty()) << to_string(v);
  }
}

TEST(Reduction, VariablesRenamedInQuantifierOrder) {
  const QbfInstance q = make_qbf(parse_formula("b & ~a"), {{"b", "a"}});
  EXPECT_EQ(normalized_matrix(q).canonical(), "(w1&~w2)");
  const QbfInstance padded = make_qbf(parse_formula("x"), {{"x", "y"}});
  EXPECT_EQ(normalized_matrix(padded).canonical(), "(w1&(w2|~w2))");
  std::vector<std::string> ten;
  for (int i = 0; i < 10; ++i) ten.push_back("v" + std::string(1, static_cast<char>('a' + i)));
  const QbfInstance wide = make_qbf(parse_formula("va | vj"), ten);
  EXPECT_EQ(normalized_matrix(wide).variables().front(), "w01");
  EXPECT_EQ(normalized_matrix(wide).variables().back(), "w10");
}

TEST(Reduction, SoundOnRandomTwoVariableMatrices) {
  std::mt19937_64 rng(61);
  const std::vector<std::string> vars{"w1", "w2"};
  for (int i = 0; i < 40; ++i) {
    const QbfInstance q = make_qbf(random_formula(rng, vars, 3), vars);
    const bool truth = qbf_truth(q);
    for (Variant v : testing::all_variants()) {
      const ControlInstance inst = reduce_qbf(q, v);
      EXPECT_EQ(solve_forced_win(inst, winner_rule_for(inst.system)).forced_win, truth)
          << q.matrix.canonical() << " " << to_string(v);
    }
  }
}

}  // namespace
}  // namespace ocontrol
