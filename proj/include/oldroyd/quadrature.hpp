#pragma once

// Fixed quadrature on the reference triangle {l1, l2 >= 0, l1 + l2 <= 1}.
//
// The rule is the 5x5 conical product of Gauss-Legendre rules under the
// collapsed-square map (s, t) -> (s, t(1-s)), whose Jacobian (1-s) raises the
// polynomial degree by one in s.  A total-degree-8 polynomial therefore maps
// to degree <= 9 in each variable, exactly integrated by 5-point Gauss; the
// product rule is degree-8 exact by construction, with all 25 weights
// positive.  Weights sum to 1/2 (the reference area); physical integrals
// multiply by 2 * triangle area.

#include <array>

namespace oldroyd {

struct QuadPoint {
  double l0, l1, l2;  // barycentric coordinates, l0 = 1 - l1 - l2
  double w;           // reference weight
};

// Degree-8-exact rule; 25 points, positive weights.
const std::array<QuadPoint, 25>& triangle_rule();

}  // namespace oldroyd
