#include "oldroyd/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <utility>

namespace oldroyd {

namespace {

constexpr double kPi = 3.14159265358979323846;

enum class Op { constant, var_x, var_y, add, sub, mul, div, pow, neg, sin, cos, exp };

}  // namespace

struct Expr::Node {
  Op op;
  double value = 0.0;  // constants only
  std::shared_ptr<const Node> lhs, rhs;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

NodePtr make_node(Op op, NodePtr lhs = nullptr, NodePtr rhs = nullptr, double v = 0.0) {
  auto n = std::make_shared<Expr::Node>();
  n->op = op;
  n->value = v;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  NodePtr run() {
    NodePtr e = expr();
    skip_space();
    if (pos_ != text_.size()) fail("trailing input");
    return e;
  }

 private:
  const std::string& text_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("expression: " + what + " at position " +
                                std::to_string(pos_) + " in \"" + text_ + "\"");
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool eat(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (eat('+')) lhs = make_node(Op::add, lhs, term());
      else if (eat('-')) lhs = make_node(Op::sub, lhs, term());
      else return lhs;
    }
  }

  NodePtr term() {
    NodePtr lhs = factor();
    for (;;) {
      if (eat('*')) lhs = make_node(Op::mul, lhs, factor());
      else if (eat('/')) lhs = make_node(Op::div, lhs, factor());
      else return lhs;
    }
  }

  NodePtr factor() {
    if (eat('-')) return make_node(Op::neg, factor());
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (eat('^')) return make_node(Op::pow, base, factor());
    return base;
  }

  NodePtr primary() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      NodePtr inner = expr();
      if (!eat(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return name();
    fail(c == '\0' ? "unexpected end of input"
                   : std::string("unexpected character '") + c + "'");
  }

  NodePtr number() {
    const char* begin = text_.c_str() + pos_;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) fail("malformed number");
    pos_ += static_cast<std::size_t>(end - begin);
    return make_node(Op::constant, nullptr, nullptr, v);
  }

  NodePtr name() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           std::isalpha(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    const std::string id = text_.substr(start, pos_ - start);
    if (id == "x") return make_node(Op::var_x);
    if (id == "y") return make_node(Op::var_y);
    if (id == "pi") return make_node(Op::constant, nullptr, nullptr, kPi);
    Op fn;
    if (id == "sin") fn = Op::sin;
    else if (id == "cos") fn = Op::cos;
    else if (id == "exp") fn = Op::exp;
    else {
      pos_ = start;
      fail("unknown name \"" + id + "\"");
    }
    if (!eat('(')) fail("expected '(' after \"" + id + "\"");
    NodePtr arg = expr();
    if (!eat(')')) fail("expected ')'");
    return make_node(fn, arg);
  }
};

double eval_node(const Expr::Node& n, double x, double y) {
  switch (n.op) {
    case Op::constant: return n.value;
    case Op::var_x: return x;
    case Op::var_y: return y;
    case Op::add: return eval_node(*n.lhs, x, y) + eval_node(*n.rhs, x, y);
    case Op::sub: return eval_node(*n.lhs, x, y) - eval_node(*n.rhs, x, y);
    case Op::mul: return eval_node(*n.lhs, x, y) * eval_node(*n.rhs, x, y);
    case Op::div: return eval_node(*n.lhs, x, y) / eval_node(*n.rhs, x, y);
    case Op::pow: return std::pow(eval_node(*n.lhs, x, y), eval_node(*n.rhs, x, y));
    case Op::neg: return -eval_node(*n.lhs, x, y);
    case Op::sin: return std::sin(eval_node(*n.lhs, x, y));
    case Op::cos: return std::cos(eval_node(*n.lhs, x, y));
    case Op::exp: return std::exp(eval_node(*n.lhs, x, y));
  }
  return 0.0;
}

}  // namespace

Expr Expr::parse(const std::string& text) {
  Expr e;
  e.root_ = Parser(text).run();
  e.text_ = text;
  return e;
}

double Expr::eval(double x, double y) const { return eval_node(*root_, x, y); }

ScalarField parse_scalar_field(const std::string& text) {
  const Expr e = Expr::parse(text);
  return [e](double x, double y) { return e.eval(x, y); };
}

VectorField parse_vector_field(const std::string& fx, const std::string& fy) {
  const Expr ex = Expr::parse(fx), ey = Expr::parse(fy);
  return [ex, ey](double x, double y) { return Vec2{ex.eval(x, y), ey.eval(x, y)}; };
}

}  // namespace oldroyd
