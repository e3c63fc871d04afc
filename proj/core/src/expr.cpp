#include "wts/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "wts/errors.hpp"

namespace wts {

const ExprNode& Expr::node() const {
  if (!node_) throw std::logic_error("use of empty expression");
  return *node_;
}

Expr Expr::number(double value) {
  auto n = std::make_shared<ExprNode>();
  n->kind = NodeKind::Number;
  n->number = value;
  return Expr(std::move(n));
}

Expr Expr::variable() {
  auto n = std::make_shared<ExprNode>();
  n->kind = NodeKind::Variable;
  return Expr(std::move(n));
}

Expr Expr::unary(NodeKind kind, Expr operand) {
  if (kind != NodeKind::Neg) throw std::logic_error("unary expects Neg");
  auto n = std::make_shared<ExprNode>();
  n->kind = kind;
  n->left = std::move(operand);
  return Expr(std::move(n));
}

Expr Expr::binary(NodeKind kind, Expr left, Expr right) {
  switch (kind) {
    case NodeKind::Add:
    case NodeKind::Sub:
    case NodeKind::Mul:
    case NodeKind::Div:
    case NodeKind::Pow:
      break;
    default:
      throw std::logic_error("binary expects Add/Sub/Mul/Div/Pow");
  }
  auto n = std::make_shared<ExprNode>();
  n->kind = kind;
  n->left = std::move(left);
  n->right = std::move(right);
  return Expr(std::move(n));
}

Expr Expr::call(FuncId func, Expr argument) {
  auto n = std::make_shared<ExprNode>();
  n->kind = NodeKind::Call;
  n->func = func;
  n->left = std::move(argument);
  return Expr(std::move(n));
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

namespace {

struct Parser {
  std::string_view text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool at_end() {
    skip_ws();
    return pos >= text.size();
  }

  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  bool consume(char c) {
    if (peek() == c) {
      ++pos;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& message) {
    skip_ws();
    throw ParseError(message, pos);
  }

  Expr parse_expr() {
    Expr left = parse_term();
    for (;;) {
      if (consume('+')) {
        left = Expr::binary(NodeKind::Add, left, parse_term());
      } else if (consume('-')) {
        left = Expr::binary(NodeKind::Sub, left, parse_term());
      } else {
        return left;
      }
    }
  }

  Expr parse_term() {
    Expr left = parse_factor();
    for (;;) {
      if (consume('*')) {
        left = Expr::binary(NodeKind::Mul, left, parse_factor());
      } else if (consume('/')) {
        left = Expr::binary(NodeKind::Div, left, parse_factor());
      } else {
        return left;
      }
    }
  }

  Expr parse_factor() {
    if (consume('-')) {
      return Expr::unary(NodeKind::Neg, parse_factor());
    }
    return parse_power();
  }

  // Right associative: x^2^3 == x^(2^3).
  Expr parse_power() {
    Expr base = parse_atom();
    if (consume('^')) {
      return Expr::binary(NodeKind::Pow, base, parse_factor());
    }
    return base;
  }

  Expr parse_atom() {
    if (at_end()) fail("unexpected end of input");
    char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      return parse_number();
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      return parse_identifier();
    }
    if (consume('(')) {
      Expr inner = parse_expr();
      if (!consume(')')) fail("expected ')'");
      return inner;
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  Expr parse_number() {
    skip_ws();
    double value = 0.0;
    const char* begin = text.data() + pos;
    const char* end = text.data() + text.size();
    auto result = std::from_chars(begin, end, value);
    if (result.ec != std::errc{}) fail("malformed number");
    pos = static_cast<std::size_t>(result.ptr - text.data());
    return Expr::number(value);
  }

  Expr parse_identifier() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) {
      ++pos;
    }
    std::string_view name = text.substr(start, pos - start);
    if (name == "x") return Expr::variable();

    int arity = 1;
    FuncId func = FuncId::Exp;
    if (name == "exp") func = FuncId::Exp;
    else if (name == "log") func = FuncId::Log;
    else if (name == "sqrt") func = FuncId::Sqrt;
    else if (name == "sinh") func = FuncId::Sinh;
    else if (name == "cosh") func = FuncId::Cosh;
    else if (name == "tanh") func = FuncId::Tanh;
    else if (name == "pow") arity = 2;
    else throw ParseError("unknown function '" + std::string(name) + "'", start);

    if (!consume('(')) fail("expected '(' after '" + std::string(name) + "'");
    Expr first = parse_expr();
    if (arity == 2) {
      if (!consume(',')) {
        throw ParseError("function '" + std::string(name) + "' expects 2 arguments", start);
      }
      Expr second = parse_expr();
      if (!consume(')')) fail("expected ')'");
      return Expr::binary(NodeKind::Pow, first, second);
    }
    if (consume(',')) {
      throw ParseError("function '" + std::string(name) + "' expects 1 argument", start);
    }
    if (!consume(')')) fail("expected ')'");
    return Expr::call(func, first);
  }
};

}  // namespace

Expr parse(std::string_view text) {
  Parser p{text};
  Expr e = p.parse_expr();
  if (!p.at_end()) {
    p.fail(std::string("unexpected character '") + p.peek() + "'");
  }
  return e;
}

// ---------------------------------------------------------------------------
// Printer
// ---------------------------------------------------------------------------

namespace {

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

const char* func_name(FuncId f) {
  switch (f) {
    case FuncId::Exp: return "exp";
    case FuncId::Log: return "log";
    case FuncId::Sqrt: return "sqrt";
    case FuncId::Sinh: return "sinh";
    case FuncId::Cosh: return "cosh";
    case FuncId::Tanh: return "tanh";
  }
  return "?";
}

// Precedence levels used by the printer.  Add/Sub bind loosest, then
// Mul/Div, unary minus, Pow; atoms never need parentheses.
int node_precedence(const ExprNode& n) {
  switch (n.kind) {
    case NodeKind::Add:
    case NodeKind::Sub: return 1;
    case NodeKind::Mul:
    case NodeKind::Div: return 2;
    case NodeKind::Neg: return 3;
    case NodeKind::Pow: return 4;
    case NodeKind::Number:
      return n.number < 0.0 ? 3 : 5;  // negative literals print like Neg
    case NodeKind::Variable:
    case NodeKind::Call: return 5;
  }
  return 5;
}

// `context` is the minimum precedence a child may have without parentheses.
// Siblings of left-associative operators pass prec+1 on the right (and the
// mirror for the right-associative '^') so that printing preserves tree
// structure exactly, not just value.
void print_node(const Expr& e, int context, std::string& out) {
  const ExprNode& n = e.node();
  int prec = node_precedence(n);
  bool parens = prec < context;
  if (parens) out += '(';
  switch (n.kind) {
    case NodeKind::Number:
      out += format_number(n.number);
      break;
    case NodeKind::Variable:
      out += 'x';
      break;
    case NodeKind::Add:
      print_node(n.left, 1, out);
      out += " + ";
      print_node(n.right, 2, out);
      break;
    case NodeKind::Sub:
      print_node(n.left, 1, out);
      out += " - ";
      print_node(n.right, 2, out);
      break;
    case NodeKind::Mul:
      print_node(n.left, 2, out);
      out += '*';
      print_node(n.right, 3, out);
      break;
    case NodeKind::Div:
      print_node(n.left, 2, out);
      out += '/';
      print_node(n.right, 3, out);
      break;
    case NodeKind::Neg:
      out += '-';
      print_node(n.left, 4, out);
      break;
    case NodeKind::Pow:
      print_node(n.left, 5, out);
      out += '^';
      print_node(n.right, 4, out);
      break;
    case NodeKind::Call:
      out += func_name(n.func);
      out += '(';
      print_node(n.left, 1, out);
      out += ')';
      break;
  }
  if (parens) out += ')';
}

}  // namespace

std::string to_string(const Expr& e) {
  std::string out;
  print_node(e, 1, out);
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

std::optional<long long> integer_constant(const Expr& e) {
  const ExprNode& n = e.node();
  if (n.kind == NodeKind::Neg) {
    if (auto inner = integer_constant(n.left)) return -*inner;
    return std::nullopt;
  }
  if (n.kind != NodeKind::Number) return std::nullopt;
  double v = n.number;
  if (!(std::abs(v) <= 9.0e15) || v != std::floor(v)) return std::nullopt;
  return static_cast<long long>(v);
}

namespace {

double eval_pow(double base, const Expr& exponent_expr, double exponent) {
  if (auto n = integer_constant(exponent_expr)) {
    long long m = *n;
    if (m == 0) return 1.0;
    bool invert = m < 0;
    unsigned long long k = invert ? -static_cast<unsigned long long>(m)
                                  : static_cast<unsigned long long>(m);
    if (invert && base == 0.0) throw DomainError("negative power of zero");
    double result = 1.0, b = base;
    while (k > 0) {
      if (k & 1ULL) result *= b;
      b *= b;
      k >>= 1ULL;
    }
    return invert ? 1.0 / result : result;
  }
  if (!(base > 0.0)) {
    throw DomainError("power with non-positive base requires an integer exponent");
  }
  return std::pow(base, exponent);
}

}  // namespace

double eval(const Expr& e, double x) {
  const ExprNode& n = e.node();
  switch (n.kind) {
    case NodeKind::Number: return n.number;
    case NodeKind::Variable: return x;
    case NodeKind::Add: return eval(n.left, x) + eval(n.right, x);
    case NodeKind::Sub: return eval(n.left, x) - eval(n.right, x);
    case NodeKind::Mul: return eval(n.left, x) * eval(n.right, x);
    case NodeKind::Div: {
      double denom = eval(n.right, x);
      if (denom == 0.0) throw DomainError("division by zero");
      return eval(n.left, x) / denom;
    }
    case NodeKind::Pow:
      return eval_pow(eval(n.left, x), n.right, eval(n.right, x));
    case NodeKind::Neg: return -eval(n.left, x);
    case NodeKind::Call: {
      double a = eval(n.left, x);
      switch (n.func) {
        case FuncId::Exp: return std::exp(a);
        case FuncId::Log:
          if (!(a > 0.0)) throw DomainError("log of non-positive value");
          return std::log(a);
        case FuncId::Sqrt:
          if (a < 0.0) throw DomainError("sqrt of negative value");
          return std::sqrt(a);
        case FuncId::Sinh: return std::sinh(a);
        case FuncId::Cosh: return std::cosh(a);
        case FuncId::Tanh: return std::tanh(a);
      }
      throw std::logic_error("unhandled function");
    }
  }
  throw std::logic_error("unhandled node kind");
}

Jet eval_jet(const Expr& e, double x, int order) {
  const ExprNode& n = e.node();
  switch (n.kind) {
    case NodeKind::Number: return Jet::constant(n.number, x, order);
    case NodeKind::Variable: return Jet::variable(x, order);
    case NodeKind::Add: return eval_jet(n.left, x, order) + eval_jet(n.right, x, order);
    case NodeKind::Sub: return eval_jet(n.left, x, order) - eval_jet(n.right, x, order);
    case NodeKind::Mul: return eval_jet(n.left, x, order) * eval_jet(n.right, x, order);
    case NodeKind::Div: return eval_jet(n.left, x, order) / eval_jet(n.right, x, order);
    case NodeKind::Pow: {
      Jet base = eval_jet(n.left, x, order);
      if (auto m = integer_constant(n.right)) return pow(base, *m);
      return pow(base, eval_jet(n.right, x, order));
    }
    case NodeKind::Neg: return -eval_jet(n.left, x, order);
    case NodeKind::Call: {
      Jet a = eval_jet(n.left, x, order);
      switch (n.func) {
        case FuncId::Exp: return exp(a);
        case FuncId::Log: return log(a);
        case FuncId::Sqrt: return sqrt(a);
        case FuncId::Sinh: return sinh(a);
        case FuncId::Cosh: return cosh(a);
        case FuncId::Tanh: return tanh(a);
      }
      throw std::logic_error("unhandled function");
    }
  }
  throw std::logic_error("unhandled node kind");
}

double derivative(const Expr& e, double x, int k) {
  return eval_jet(e, x, k).derivative(k);
}

Expr reciprocal(const Expr& e) {
  return Expr::binary(NodeKind::Div, Expr::number(1.0), e);
}

bool structurally_equal(const Expr& a, const Expr& b) {
  if (!a.valid() || !b.valid()) return a.valid() == b.valid();
  const ExprNode& na = a.node();
  const ExprNode& nb = b.node();
  if (na.kind != nb.kind) return false;
  switch (na.kind) {
    case NodeKind::Number: return na.number == nb.number;
    case NodeKind::Variable: return true;
    case NodeKind::Neg: return structurally_equal(na.left, nb.left);
    case NodeKind::Call:
      return na.func == nb.func && structurally_equal(na.left, nb.left);
    default:
      return structurally_equal(na.left, nb.left) &&
             structurally_equal(na.right, nb.right);
  }
}

}  // namespace wts
