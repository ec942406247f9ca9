#pragma once

// Minimal arithmetic expression language for analytic forcing fields:
//
//   expr    := term (('+' | '-') term)*
//   term    := factor (('*' | '/') factor)*
//   factor  := '-' factor | power
//   power   := primary ('^' factor)?          (right associative)
//   primary := number | 'x' | 'y' | 'pi' | fn '(' expr ')' | '(' expr ')'
//   fn      := sin | cos | exp
//
// so "-x^2" means -(x^2) and "2^3^2" means 2^(3^2).  Parsing happens once;
// evaluation walks the tree with plain doubles (division by zero and domain
// overflows follow IEEE semantics).

#include <memory>
#include <string>

#include "oldroyd/forcing.hpp"

namespace oldroyd {

class Expr {
 public:
  // Throws std::invalid_argument with a position diagnostic on bad input.
  static Expr parse(const std::string& text);

  double eval(double x, double y) const;
  const std::string& text() const { return text_; }

  struct Node;  // opaque outside the implementation

 private:
  std::shared_ptr<const Node> root_;
  std::string text_;
};

// Convenience closures over parsed expressions.
ScalarField parse_scalar_field(const std::string& text);
VectorField parse_vector_field(const std::string& fx, const std::string& fy);

}  // namespace oldroyd
