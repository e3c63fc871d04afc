#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "wts/jet.hpp"

namespace wts {

enum class NodeKind { Number, Variable, Add, Sub, Mul, Div, Pow, Neg, Call };

enum class FuncId { Exp, Log, Sqrt, Sinh, Cosh, Tanh };

struct ExprNode;

// Immutable expression in one variable x.  Copies share the underlying tree.
class Expr {
public:
  Expr() = default;

  bool valid() const { return node_ != nullptr; }
  const ExprNode& node() const;

  static Expr number(double value);
  static Expr variable();
  static Expr unary(NodeKind kind, Expr operand);              // Neg
  static Expr binary(NodeKind kind, Expr left, Expr right);    // Add..Pow
  static Expr call(FuncId func, Expr argument);

private:
  explicit Expr(std::shared_ptr<const ExprNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const ExprNode> node_;
};

struct ExprNode {
  NodeKind kind;
  double number = 0.0;  // Number
  FuncId func{};        // Call
  Expr left;            // unary operand / call argument / binary left
  Expr right;           // binary right
};

// Parse symbol text.  Grammar (whitespace between tokens is ignored):
//
//   expr   := term (('+' | '-') term)*
//   term   := factor (('*' | '/') factor)*
//   factor := '-' factor | power
//   power  := atom ('^' factor)?          (right associative)
//   atom   := NUMBER | 'x' | IDENT '(' expr (',' expr)? ')' | '(' expr ')'
//
// IDENT is one of exp, log, sqrt, sinh, cosh, tanh (one argument) or pow
// (two arguments, desugared to '^').  Throws ParseError with the byte offset
// of the offending token.
Expr parse(std::string_view text);

// Render with minimal parentheses; parse(to_string(e)) reproduces the tree.
std::string to_string(const Expr& e);

// Plain evaluation at a point.  Throws DomainError when evaluation leaves
// the domain (log/sqrt of a non-positive value, division by zero, ...).
double eval(const Expr& e, double x);

// Taylor jet of the expression at x, carrying derivatives up to `order`
// (0 <= order <= kMaxJetOrder).
Jet eval_jet(const Expr& e, double x, int order);

// k-th derivative at x via eval_jet.
double derivative(const Expr& e, double x, int k);

// The expression 1/e (no simplification).
Expr reciprocal(const Expr& e);

bool structurally_equal(const Expr& a, const Expr& b);

// If e is an integer constant (possibly negated) representable exactly,
// return it.  Used to route x^n through repeated multiplication.
std::optional<long long> integer_constant(const Expr& e);

}  // namespace wts
