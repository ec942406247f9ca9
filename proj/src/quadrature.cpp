#include "oldroyd/quadrature.hpp"

namespace oldroyd {

namespace {

// 5-point Gauss-Legendre on [-1, 1].
constexpr double kNode[5] = {-0.9061798459386639928, -0.5384693101056830910, 0.0,
                             0.5384693101056830910, 0.9061798459386639928};
constexpr double kWeight[5] = {0.2369268850561890875, 0.4786286704993664680,
                              0.5688888888888888889, 0.4786286704993664680,
                              0.2369268850561890875};

std::array<QuadPoint, 25> build() {
  std::array<QuadPoint, 25> rule{};
  int k = 0;
  for (int i = 0; i < 5; ++i) {
    const double s = 0.5 * (kNode[i] + 1.0);   // map to [0,1]
    const double ws = 0.5 * kWeight[i];
    for (int j = 0; j < 5; ++j) {
      const double t = 0.5 * (kNode[j] + 1.0);
      const double wt = 0.5 * kWeight[j];
      const double l1 = s;
      const double l2 = t * (1.0 - s);
      rule[k++] = {1.0 - l1 - l2, l1, l2, ws * wt * (1.0 - s)};
    }
  }
  return rule;
}

}  // namespace

const std::array<QuadPoint, 25>& triangle_rule() {
  static const std::array<QuadPoint, 25> rule = build();
  return rule;
}

}  // namespace oldroyd
