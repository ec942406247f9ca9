// Quadrature exactness against the closed-form monomial integrals
//   int_T x^p y^q dx dy = p! q! / (p + q + 2)!   on the reference triangle.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oldroyd/quadrature.hpp"

using namespace oldroyd;

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

double exact_monomial(int p, int q) {
  return factorial(p) * factorial(q) / factorial(p + q + 2);
}

}  // namespace

TEST_CASE("weights are positive and sum to the reference area") {
  double sum = 0.0;
  for (const auto& qp : triangle_rule()) {
    CHECK(qp.w > 0.0);
    CHECK(qp.l0 >= 0.0);
    CHECK(qp.l1 >= 0.0);
    CHECK(qp.l2 >= 0.0);
    CHECK(qp.l0 + qp.l1 + qp.l2 == doctest::Approx(1.0).epsilon(1e-14));
    sum += qp.w;
  }
  CHECK(sum == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("rule integrates all monomials of total degree <= 8 exactly") {
  for (int p = 0; p <= 8; ++p) {
    for (int q = 0; p + q <= 8; ++q) {
      double acc = 0.0;
      for (const auto& qp : triangle_rule())
        acc += qp.w * std::pow(qp.l1, p) * std::pow(qp.l2, q);
      CHECK(acc == doctest::Approx(exact_monomial(p, q)).epsilon(1e-13));
    }
  }
}

TEST_CASE("quartic of a quadratic integrates exactly") {
  // The L4 norms below integrate fourth powers of quadratic fields; that is
  // the degree-8 case the rule was sized for.  (l1 l2)^2 squared has total
  // degree 8: int (l1 l2)^4 = 4!4!/10! = 576/3628800.
  double acc = 0.0;
  for (const auto& qp : triangle_rule())
    acc += qp.w * std::pow(qp.l1 * qp.l2, 4);
  CHECK(acc == doctest::Approx(576.0 / 3628800.0).epsilon(1e-13));
}
