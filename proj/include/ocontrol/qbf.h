#pragma once

// Propositional formulas, strictly alternating QBF, the formula-interpreting
// election systems E and E', and the reductions from QBF to the online
// control problems.
//
// Formula grammar (loosest binding first):
//   iff   := or ( "<->" or )*
//   or    := and ( "|" and )*
//   and   := unary ( "&" unary )*
//   unary := "~" unary | primary
//   primary := variable | "(" iff ")"
// Variables are a letter followed by letters or digits. Whitespace is
// ignored. Binary operators associate to the left. The canonical form is
// fully parenthesised without whitespace, e.g. "((x1|~x2)<->((x3&~x3)&x3))".

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ocontrol/election.h"

namespace ocontrol {

class FormulaSyntaxError : public std::runtime_error {
 public:
  FormulaSyntaxError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class QbfCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Formula {
 public:
  enum class Op { var, neg, conj, disj, iff };

  static Formula variable(std::string name);
  static Formula negation(Formula operand);
  static Formula binary(Op op, Formula lhs, Formula rhs);

  Op op() const { return node_->op; }
  const std::string& name() const { return node_->name; }
  const Formula& lhs() const { return *node_->lhs; }
  const Formula& rhs() const { return *node_->rhs; }
  const Formula& operand() const { return *node_->lhs; }

  /// Distinct variable names in lexicographic order.
  std::vector<std::string> variables() const;
  std::string canonical() const;

  /// Simultaneous renaming; names absent from the map are kept.
  Formula rename(const std::map<std::string, std::string>& mapping) const;

  friend bool operator==(const Formula& a, const Formula& b) {
    return a.canonical() == b.canonical();
  }

 private:
  struct Node {
    Op op;
    std::string name;
    std::shared_ptr<const Formula> lhs;
    std::shared_ptr<const Formula> rhs;
  };
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

Formula parse_formula(std::string_view text);

using Assignment = std::map<std::string, bool>;

/// Throws ContractError if a variable of `f` is unassigned.
bool eval_formula(const Formula& f, const Assignment& assignment);

/// (exists v1)(forall v2)...(forall v2j)[matrix], quantifiers in the order of
/// `variables`.
struct QbfInstance {
  Formula matrix;
  std::vector<std::string> variables;

  std::size_t j() const { return variables.size() / 2; }
};

/// Without an explicit order the quantifier order is the lexicographic order
/// of the matrix variables. Throws std::invalid_argument unless the variable
/// count is even and positive and covers the matrix.
QbfInstance make_qbf(Formula matrix, std::optional<std::vector<std::string>> order = {});

inline constexpr std::size_t kDefaultQbfCap = 20;

bool qbf_truth(const QbfInstance& q, std::size_t max_variables = kDefaultQbfCap);

/// Candidate ids "<canonical formula>#<decimal index>".
std::string encode_candidate_id(const Formula& f, std::size_t index);

struct QbfCandidateId {
  std::string formula;  // canonical text
  std::size_t index = 0;
};

/// Nullopt for anything that is not a canonical id (the "syntactic problem"
/// outcome of the E/E' rules).
std::optional<QbfCandidateId> decode_candidate_id(std::string_view id);

enum class QbfFlavor { e, e_prime };

/// All-or-nothing winner rule of E (or E', with outcomes swapped). Total:
/// never throws on arbitrary candidate names.
std::vector<Cand> winners_qbf_system(std::span<const std::string> names,
                                     std::span<const Cand> standing,
                                     std::span<const Vote> masked_votes, QbfFlavor flavor);

WinnerRule qbf_rule(QbfFlavor flavor);

WinnerRule winner_rule_for(System system);

/// The matrix rewritten over w1..w2j (zero-padded when 2j >= 10 so that
/// lexicographic order matches quantifier order), conjoined with (w|~w)
/// for any quantified variable the matrix does not mention.
Formula normalized_matrix(const QbfInstance& q);

ControlInstance reduce_qbf(const QbfInstance& q, Variant target);

}  // namespace ocontrol
