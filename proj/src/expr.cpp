#include "lifelogic/expr.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <set>

namespace lifelogic {

ExprPtr var(std::string name) {
  auto e = std::make_shared<Expr>();
  e->op = Expr::Op::Var;
  e->name = std::move(name);
  return e;
}

ExprPtr lnot(ExprPtr a) {
  auto e = std::make_shared<Expr>();
  e->op = Expr::Op::Not;
  e->args = {std::move(a)};
  return e;
}

ExprPtr nary(Expr::Op op, std::vector<ExprPtr> args) {
  if (args.size() == 1) return args.front();
  auto e = std::make_shared<Expr>();
  e->op = op;
  e->args = std::move(args);
  return e;
}

ExprPtr land(ExprPtr a, ExprPtr b) { return nary(Expr::Op::And, {std::move(a), std::move(b)}); }
ExprPtr lor(ExprPtr a, ExprPtr b) { return nary(Expr::Op::Or, {std::move(a), std::move(b)}); }
ExprPtr lxor(ExprPtr a, ExprPtr b) { return nary(Expr::Op::Xor, {std::move(a), std::move(b)}); }

ExprParseError::ExprParseError(std::size_t position, const std::string& msg)
    : std::runtime_error("column " + std::to_string(position) + ": " + msg), position_(position) {}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  ExprPtr parse() {
    ExprPtr e = chain(0);
    skip();
    if (i_ < s_.size()) fail(std::string("unexpected '") + s_[i_] + "'");
    return e;
  }

 private:
  static constexpr std::array<std::pair<char, Expr::Op>, 3> kLevels{
      {{'|', Expr::Op::Or}, {'^', Expr::Op::Xor}, {'&', Expr::Op::And}}};

  [[noreturn]] void fail(const std::string& msg) const { throw ExprParseError(i_ + 1, msg); }

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  ExprPtr chain(std::size_t level) {
    if (level == kLevels.size()) return unary();
    std::vector<ExprPtr> args{chain(level + 1)};
    for (;;) {
      skip();
      if (i_ >= s_.size() || s_[i_] != kLevels[level].first) break;
      ++i_;
      args.push_back(chain(level + 1));
    }
    return nary(kLevels[level].second, std::move(args));
  }

  ExprPtr unary() {
    skip();
    if (i_ >= s_.size()) fail("unexpected end of expression");
    const char c = s_[i_];
    if (c == '!') {
      ++i_;
      return lnot(unary());
    }
    if (c == '(') {
      ++i_;
      ExprPtr e = chain(0);
      skip();
      if (i_ >= s_.size() || s_[i_] != ')') fail("expected ')'");
      ++i_;
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t b = i_;
      while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
      return var(std::string(s_.substr(b, i_ - b)));
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

char op_char(Expr::Op op) {
  switch (op) {
    case Expr::Op::And: return '&';
    case Expr::Op::Or: return '|';
    case Expr::Op::Xor: return '^';
    default: return '?';
  }
}

void collect(const ExprPtr& e, std::set<std::string>& out) {
  if (e->op == Expr::Op::Var) out.insert(e->name);
  for (const auto& a : e->args) collect(a, out);
}

}  // namespace

ExprPtr parse_expression(std::string_view text) { return Parser(text).parse(); }

std::string to_string(const ExprPtr& e) {
  switch (e->op) {
    case Expr::Op::Var: return e->name;
    case Expr::Op::Not: return "!" + to_string(e->args[0]);
    default: {
      std::string s = "(";
      for (std::size_t i = 0; i < e->args.size(); ++i) {
        if (i) s += std::string(" ") + op_char(e->op) + " ";
        s += to_string(e->args[i]);
      }
      return s + ")";
    }
  }
}

bool structurally_equal(const ExprPtr& a, const ExprPtr& b) {
  if (a->op != b->op || a->name != b->name || a->args.size() != b->args.size()) return false;
  for (std::size_t i = 0; i < a->args.size(); ++i)
    if (!structurally_equal(a->args[i], b->args[i])) return false;
  return true;
}

std::vector<std::string> variables(const ExprPtr& e) {
  std::set<std::string> s;
  collect(e, s);
  return {s.begin(), s.end()};
}

MissingVariableError::MissingVariableError(const std::string& name)
    : std::runtime_error("no value for variable '" + name + "'"), name_(name) {}

bool boolean_eval(const ExprPtr& e, const Assignment& a) {
  switch (e->op) {
    case Expr::Op::Var: {
      const auto it = a.find(e->name);
      if (it == a.end()) throw MissingVariableError(e->name);
      return it->second;
    }
    case Expr::Op::Not: return !boolean_eval(e->args[0], a);
    case Expr::Op::And:
      return std::all_of(e->args.begin(), e->args.end(), [&](const ExprPtr& x) { return boolean_eval(x, a); });
    case Expr::Op::Or:
      return std::any_of(e->args.begin(), e->args.end(), [&](const ExprPtr& x) { return boolean_eval(x, a); });
    case Expr::Op::Xor: {
      bool v = false;
      for (const auto& x : e->args) v = v != boolean_eval(x, a);
      return v;
    }
  }
  return false;
}

ExprPtr binarize(const ExprPtr& e, XorForm form) {
  switch (e->op) {
    case Expr::Op::Var: return e;
    case Expr::Op::Not: return lnot(binarize(e->args[0], form));
    default: break;
  }
  ExprPtr acc = binarize(e->args[0], form);
  for (std::size_t i = 1; i < e->args.size(); ++i) {
    ExprPtr rhs = binarize(e->args[i], form);
    switch (e->op) {
      case Expr::Op::And: acc = land(acc, rhs); break;
      case Expr::Op::Or: acc = lor(acc, rhs); break;
      default:
        acc = form == XorForm::ConjunctiveNegated
                  ? land(lor(acc, rhs), lnot(land(acc, rhs)))
                  : lor(land(acc, lnot(rhs)), land(lnot(acc), rhs));
    }
  }
  return acc;
}

OperatorCounts count_operators(const ExprPtr& e) {
  OperatorCounts c;
  switch (e->op) {
    case Expr::Op::Var: c.leaves = 1; return c;
    case Expr::Op::Not: ++c.n_not; break;
    case Expr::Op::And: c.n_and += static_cast<int>(e->args.size()) - 1; break;
    case Expr::Op::Or: c.n_or += static_cast<int>(e->args.size()) - 1; break;
    case Expr::Op::Xor: throw std::invalid_argument("count_operators needs a binarized expression");
  }
  for (const auto& a : e->args) {
    const OperatorCounts s = count_operators(a);
    c.n_not += s.n_not;
    c.n_and += s.n_and;
    c.n_or += s.n_or;
    c.leaves += s.leaves;
  }
  return c;
}

Oriented orient(const ExprPtr& e, Heading desired) {
  Oriented o{e, desired, {}};
  if (e->op == Expr::Op::Xor || (e->op != Expr::Op::Var && e->op != Expr::Op::Not && e->args.size() != 2))
    throw std::invalid_argument("orient needs a binarized expression");
  const Heading flipped = desired == Heading::SE ? Heading::SW : Heading::SE;
  for (const auto& a : e->args) o.children.push_back(orient(a, e->op == Expr::Op::Not ? flipped : desired));
  return o;
}

}  // namespace lifelogic
