#pragma once

// Boolean expressions: parsing, printing, rewriting.
//
// Grammar (lowest precedence first):
//   or   := xor ('|' xor)*
//   xor  := and ('^' and)*
//   and  := unary ('&' unary)*
//   unary:= '!' unary | '(' or ')' | identifier
// Chains of one operator parse into a single n-ary node.

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lifelogic/engine.hpp"

namespace lifelogic {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Op { Var, Not, And, Or, Xor };
  Op op = Op::Var;
  std::string name;           // Var only
  std::vector<ExprPtr> args;  // Not: 1; And/Or/Xor: >= 2
};

ExprPtr var(std::string name);
ExprPtr lnot(ExprPtr e);
ExprPtr land(ExprPtr a, ExprPtr b);
ExprPtr lor(ExprPtr a, ExprPtr b);
ExprPtr lxor(ExprPtr a, ExprPtr b);
ExprPtr nary(Expr::Op op, std::vector<ExprPtr> args);

class ExprParseError : public std::runtime_error {
 public:
  ExprParseError(std::size_t position, const std::string& msg);
  /// 1-based column of the offending character.
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

ExprPtr parse_expression(std::string_view text);
/// Fully parenthesised form that parses back to the same tree.
std::string to_string(const ExprPtr& e);
bool structurally_equal(const ExprPtr& a, const ExprPtr& b);

/// Sorted, unique variable names.
std::vector<std::string> variables(const ExprPtr& e);

using Assignment = std::map<std::string, bool>;

class MissingVariableError : public std::runtime_error {
 public:
  explicit MissingVariableError(const std::string& name);
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

bool boolean_eval(const ExprPtr& e, const Assignment& a);

enum class XorForm {
  ConjunctiveNegated,  // (x | y) & !(x & y)
  Disjunctive,         // (x & !y) | (!x & y)
};

/// Binary And/Or and unary Not only; n-ary chains fold to the left.
ExprPtr binarize(const ExprPtr& e, XorForm form = XorForm::ConjunctiveNegated);

struct OperatorCounts {
  int n_not = 0;
  int n_and = 0;
  int n_or = 0;
  int leaves = 0;
};
/// Counts on a binarized tree.
OperatorCounts count_operators(const ExprPtr& e);

/// Binarized tree annotated with the heading each node's output stream takes.
struct Oriented {
  ExprPtr expr;
  Heading heading = Heading::SE;
  std::vector<Oriented> children;
};
/// Not reverses its child's heading; And/Or pass their heading down.
Oriented orient(const ExprPtr& binarized, Heading desired);

}  // namespace lifelogic
