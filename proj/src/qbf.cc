#include "ocontrol/qbf.h"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>
#include <unordered_map>

namespace ocontrol {

Formula Formula::variable(std::string name) {
  return Formula(std::make_shared<const Node>(Node{Op::var, std::move(name), nullptr, nullptr}));
}

Formula Formula::negation(Formula operand) {
  return Formula(std::make_shared<const Node>(
      Node{Op::neg, {}, std::make_shared<const Formula>(std::move(operand)), nullptr}));
}

Formula Formula::binary(Op op, Formula lhs, Formula rhs) {
  if (op == Op::var || op == Op::neg) throw ContractError("Formula::binary: not a binary op");
  return Formula(std::make_shared<const Node>(
      Node{op, {}, std::make_shared<const Formula>(std::move(lhs)),
           std::make_shared<const Formula>(std::move(rhs))}));
}

namespace {

void collect(const Formula& f, std::set<std::string>& out) {
  switch (f.op()) {
    case Formula::Op::var: out.insert(f.name()); return;
    case Formula::Op::neg: collect(f.operand(), out); return;
    default:
      collect(f.lhs(), out);
      collect(f.rhs(), out);
  }
}

std::string_view op_text(Formula::Op op) {
  switch (op) {
    case Formula::Op::conj: return "&";
    case Formula::Op::disj: return "|";
    case Formula::Op::iff: return "<->";
    default: return "";
  }
}

void write_canonical(const Formula& f, std::string& out) {
  switch (f.op()) {
    case Formula::Op::var: out += f.name(); return;
    case Formula::Op::neg:
      out += '~';
      write_canonical(f.operand(), out);
      return;
    default:
      out += '(';
      write_canonical(f.lhs(), out);
      out += op_text(f.op());
      write_canonical(f.rhs(), out);
      out += ')';
  }
}

}  // namespace

std::vector<std::string> Formula::variables() const {
  std::set<std::string> names;
  collect(*this, names);
  return {names.begin(), names.end()};
}

std::string Formula::canonical() const {
  std::string out;
  write_canonical(*this, out);
  return out;
}

Formula Formula::rename(const std::map<std::string, std::string>& mapping) const {
  switch (op()) {
    case Op::var: {
      auto it = mapping.find(name());
      return variable(it == mapping.end() ? name() : it->second);
    }
    case Op::neg: return negation(operand().rename(mapping));
    default: return binary(op(), lhs().rename(mapping), rhs().rename(mapping));
  }
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Formula parse() {
    Formula f = parse_iff();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw FormulaSyntaxError(what, pos_); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  Formula parse_iff() {
    Formula f = parse_or();
    while (accept("<->")) f = Formula::binary(Formula::Op::iff, f, parse_or());
    return f;
  }

  Formula parse_or() {
    Formula f = parse_and();
    while (accept("|")) f = Formula::binary(Formula::Op::disj, f, parse_and());
    return f;
  }

  Formula parse_and() {
    Formula f = parse_unary();
    while (accept("&")) f = Formula::binary(Formula::Op::conj, f, parse_unary());
    return f;
  }

  Formula parse_unary() {
    if (accept("~")) {
      Nesting guard(*this);
      return Formula::negation(parse_unary());
    }
    return parse_primary();
  }

  Formula parse_primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of formula");
    if (accept("(")) {
      Nesting guard(*this);
      Formula f = parse_iff();
      if (!accept(")")) fail("expected ')'");
      return f;
    }
    const auto is_alpha = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; };
    const auto is_alnum = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; };
    if (!is_alpha(text_[pos_])) fail("expected a variable or '('");
    const std::size_t start = pos_;
    while (pos_ < text_.size() && is_alnum(text_[pos_])) ++pos_;
    return Formula::variable(std::string(text_.substr(start, pos_ - start)));
  }

  struct Nesting {
    explicit Nesting(Parser& p) : parser(p) {
      if (++parser.depth_ > kMaxDepth) parser.fail("formula nested too deeply");
    }
    ~Nesting() { --parser.depth_; }
    Parser& parser;
  };

  static constexpr std::size_t kMaxDepth = 2000;

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t depth_ = 0;
};

// Postfix program over variable slots for fast repeated evaluation.
class Compiled {
 public:
  Compiled(const Formula& f, const std::vector<std::string>& order) {
    for (std::size_t i = 0; i < order.size(); ++i) slot_.emplace(order[i], i);
    emit(f);
  }

  bool eval(const std::vector<bool>& values) const {
    std::vector<bool> stack;
    stack.reserve(code_.size());
    for (const Instr& ins : code_) {
      if (ins.op == Formula::Op::var) {
        stack.push_back(values[ins.slot]);
        continue;
      }
      if (ins.op == Formula::Op::neg) {
        stack.back() = !stack.back();
        continue;
      }
      const bool r = stack.back();
      stack.pop_back();
      const bool l = stack.back();
      switch (ins.op) {
        case Formula::Op::conj: stack.back() = l && r; break;
        case Formula::Op::disj: stack.back() = l || r; break;
        default: stack.back() = l == r; break;
      }
    }
    return stack.back();
  }

 private:
  struct Instr {
    Formula::Op op;
    std::size_t slot;
  };

  void emit(const Formula& f) {
    switch (f.op()) {
      case Formula::Op::var: {
        auto it = slot_.find(f.name());
        if (it == slot_.end()) throw ContractError("unassigned variable '" + f.name() + "'");
        code_.push_back({Formula::Op::var, it->second});
        return;
      }
      case Formula::Op::neg:
        emit(f.operand());
        code_.push_back({Formula::Op::neg, 0});
        return;
      default:
        emit(f.lhs());
        emit(f.rhs());
        code_.push_back({f.op(), 0});
    }
  }

  std::unordered_map<std::string, std::size_t> slot_;
  std::vector<Instr> code_;
};

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(text).parse(); }

bool eval_formula(const Formula& f, const Assignment& assignment) {
  switch (f.op()) {
    case Formula::Op::var: {
      auto it = assignment.find(f.name());
      if (it == assignment.end()) throw ContractError("unassigned variable '" + f.name() + "'");
      return it->second;
    }
    case Formula::Op::neg: return !eval_formula(f.operand(), assignment);
    case Formula::Op::conj:
      return eval_formula(f.lhs(), assignment) && eval_formula(f.rhs(), assignment);
    case Formula::Op::disj:
      return eval_formula(f.lhs(), assignment) || eval_formula(f.rhs(), assignment);
    case Formula::Op::iff:
      return eval_formula(f.lhs(), assignment) == eval_formula(f.rhs(), assignment);
  }
  return false;
}

QbfInstance make_qbf(Formula matrix, std::optional<std::vector<std::string>> order) {
  std::vector<std::string> vars = order ? std::move(*order) : matrix.variables();
  if (vars.empty() || vars.size() % 2 != 0) {
    throw std::invalid_argument("QBF needs an even, positive number of quantified variables");
  }
  const std::set<std::string> quantified(vars.begin(), vars.end());
  if (quantified.size() != vars.size()) {
    throw std::invalid_argument("QBF variable order lists a variable twice");
  }
  for (const auto& v : matrix.variables()) {
    if (!quantified.contains(v)) {
      throw std::invalid_argument("matrix variable '" + v + "' is not quantified");
    }
  }
  return QbfInstance{std::move(matrix), std::move(vars)};
}

bool qbf_truth(const QbfInstance& q, std::size_t max_variables) {
  const std::size_t n = q.variables.size();
  if (n > max_variables) {
    throw QbfCapExceeded("QBF has " + std::to_string(n) + " variables; cap is " +
                         std::to_string(max_variables));
  }
  const Compiled program(q.matrix, q.variables);
  std::vector<bool> values(n, false);
  // Position p is existential for even p (w1, w3, ...), universal otherwise.
  std::function<bool(std::size_t)> eval = [&](std::size_t p) -> bool {
    if (p == n) return program.eval(values);
    const bool existential = p % 2 == 0;
    for (bool value : {false, true}) {
      values[p] = value;
      const bool r = eval(p + 1);
      if (existential && r) return true;
      if (!existential && !r) return false;
    }
    return !existential;
  };
  return eval(0);
}

namespace {
constexpr std::size_t kMaxCandidateIdLength = 1 << 14;
}  // namespace

std::string encode_candidate_id(const Formula& f, std::size_t index) {
  return f.canonical() + "#" + std::to_string(index);
}

std::optional<QbfCandidateId> decode_candidate_id(std::string_view id) {
  if (id.size() > kMaxCandidateIdLength) return std::nullopt;
  const auto hash = id.rfind('#');
  if (hash == std::string_view::npos) return std::nullopt;
  const std::string_view formula_text = id.substr(0, hash);
  const std::string_view digits = id.substr(hash + 1);
  if (digits.empty() || digits.size() > 18) return std::nullopt;
  if (digits.size() > 1 && digits.front() == '0') return std::nullopt;
  std::size_t index = 0;
  for (char c : digits) {
    if (c < '0' || c > '9') return std::nullopt;
    index = index * 10 + static_cast<std::size_t>(c - '0');
  }
  try {
    const Formula f = parse_formula(formula_text);
    std::string canonical = f.canonical();
    if (canonical != formula_text) return std::nullopt;
    return QbfCandidateId{std::move(canonical), index};
  } catch (const FormulaSyntaxError&) {
    return std::nullopt;
  }
}

std::vector<Cand> winners_qbf_system(std::span<const std::string> names,
                                     std::span<const Cand> standing,
                                     std::span<const Vote> masked_votes, QbfFlavor flavor) {
  const std::vector<Cand> everyone(standing.begin(), standing.end());
  const std::vector<Cand> no_one;
  const auto& loses = flavor == QbfFlavor::e ? no_one : everyone;
  const auto& wins = flavor == QbfFlavor::e ? everyone : no_one;
  if (standing.empty()) return {};

  std::vector<QbfCandidateId> ids;
  ids.reserve(standing.size());
  for (Cand c : standing) {
    if (c >= names.size()) return loses;
    auto id = decode_candidate_id(names[c]);
    if (!id) return loses;
    ids.push_back(std::move(*id));
  }
  for (const auto& id : ids) {
    if (id.formula != ids.front().formula) return loses;
  }
  const Formula formula = parse_formula(ids.front().formula);
  const std::vector<std::string> vars = formula.variables();
  const std::size_t ell = vars.size();
  if (ell == 0 || ell % 2 != 0) return loses;

  // Candidate (standing position) holding index i, if any.
  std::map<std::size_t, Cand> by_index;
  for (std::size_t s = 0; s < standing.size(); ++s) by_index.emplace(ids[s].index, standing[s]);
  for (std::size_t i = 0; i <= ell; i += 2) {
    if (!by_index.contains(i)) return loses;
  }
  if (masked_votes.size() >= 2) return loses;

  Assignment assignment;
  for (std::size_t i = 1; i <= ell; ++i) {
    bool value = false;
    if (i % 2 == 1) {
      value = by_index.contains(i);
    } else if (masked_votes.size() == 1) {
      const Vote& vote = masked_votes.front();
      const auto pos = [&](Cand c) { return std::find(vote.begin(), vote.end(), c); };
      value = pos(by_index.at(i)) < pos(by_index.at(0));
    }
    assignment.emplace(vars[i - 1], value);
  }
  return eval_formula(formula, assignment) ? wins : loses;
}

WinnerRule qbf_rule(QbfFlavor flavor) {
  return [flavor](std::span<const std::string> names, std::span<const Cand> standing,
                  std::span<const Vote> masked) {
    return winners_qbf_system(names, standing, masked, flavor);
  };
}

WinnerRule winner_rule_for(System system) {
  switch (system) {
    case System::plurality: return plurality_rule();
    case System::qbf_e: return qbf_rule(QbfFlavor::e);
    case System::qbf_eprime: return qbf_rule(QbfFlavor::e_prime);
  }
  return plurality_rule();
}

Formula normalized_matrix(const QbfInstance& q) {
  const std::size_t n = q.variables.size();
  const std::size_t width = std::to_string(n).size();
  std::map<std::string, std::string> mapping;
  std::vector<std::string> renamed;
  for (std::size_t i = 0; i < n; ++i) {
    std::string digits = std::to_string(i + 1);
    if (n >= 10) digits.insert(0, width - digits.size(), '0');
    renamed.push_back("w" + digits);
    mapping.emplace(q.variables[i], renamed.back());
  }
  Formula f = q.matrix.rename(mapping);
  const auto used = f.variables();
  for (const auto& w : renamed) {
    if (std::binary_search(used.begin(), used.end(), w)) continue;
    const Formula v = Formula::variable(w);
    f = Formula::binary(Formula::Op::conj, f,
                        Formula::binary(Formula::Op::disj, v, Formula::negation(v)));
  }
  return f;
}

ControlInstance reduce_qbf(const QbfInstance& q, Variant target) {
  const Formula f = normalized_matrix(q);
  const std::size_t j = q.j();
  const std::size_t m = 2 * j + 1;

  ControlInstance inst;
  inst.variant = target;
  inst.system = is_constructive(target) ? System::qbf_e : System::qbf_eprime;
  inst.spoiler.assign(m, false);
  for (std::size_t i = 0; i < m; ++i) {
    inst.candidates.push_back(encode_candidate_id(f, i));
    inst.presentation.push_back(static_cast<Cand>(i));
    inst.sigma.push_back(static_cast<Cand>(m - 1 - i));
    if (is_addition(target) && i % 2 == 1) inst.spoiler[i] = true;
  }
  inst.d = 0;
  inst.budget = j;
  inst.current_index = 1;
  inst.decisions = {is_addition(target) ? Decision::in : Decision::kept};
  inst.num_voters = 1;
  inst.votes = {Vote{0, 1}};
  return inst;
}

}  // namespace ocontrol
