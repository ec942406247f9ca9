#include "oldroyd/constants.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace oldroyd {

EnergyCoeffs energy_coeffs(const FluidParams& p, double c_omega, double f_norm) {
  p.validate();
  EnergyCoeffs c;
  c.alpha = std::sqrt(2.0) * std::abs(p.a) * c_omega * c_omega * p.we / std::sqrt(p.r);
  c.beta = std::min(1.0 - p.r, p.diff);
  c.gamma = std::sqrt(2.0 * p.r) * f_norm;
  return c;
}

double existence_number(const FluidParams& p, double c_omega, double f_norm) {
  p.validate();
  const double beta = std::min(1.0 - p.r, p.diff);
  return 8.0 * std::abs(p.a) * c_omega * c_omega * p.we * f_norm / (beta * beta);
}

ExistenceThresholdExceeded::ExistenceThresholdExceeded(double c1_)
    : std::domain_error("existence threshold exceeded: smallness number " +
                        std::to_string(c1_) + " > 1"),
      c1(c1_) {}

EnergyRadius energy_radius(const FluidParams& p, double c_omega, double f_norm) {
  const EnergyCoeffs c = energy_coeffs(p, c_omega, f_norm);
  const double c1 = existence_number(p, c_omega, f_norm);
  if (c1 > 1.0 + 1e-14) throw ExistenceThresholdExceeded(c1);

  if (f_norm == 0.0) return {0.0, RadiusBranch::degenerate};
  if (c.alpha == 0.0) return {c.gamma / c.beta, RadiusBranch::corotational};

  // Smaller root of alpha x^2 - beta x + gamma = 0, written in the
  // cancellation-free form 2 gamma / (beta + sqrt(disc)).
  const double disc = std::max(0.0, c.beta * c.beta - 4.0 * c.alpha * c.gamma);
  return {2.0 * c.gamma / (c.beta + std::sqrt(disc)), RadiusBranch::small_root};
}

UniquenessCoeffs uniqueness_coefficients(const FluidParams& p, double c_omega,
                                         double c2) {
  p.validate();
  UniquenessCoeffs u;
  const double k = c_omega * c_omega * c2 / std::sqrt(2.0 * p.r);
  if (p.re > 1e-12) {
    u.a_coef = (1.0 - p.r) - 4.0 * p.re * k;
    u.b_coef = std::min(1.0, p.diff) -
               k * (9.0 * p.we * p.we / (4.0 * p.re) + 2.0 * std::abs(p.a) * p.we);
  } else {
    // Inertialess case: the convective difference term is absent, but the
    // standard Young split of the mixed transport term divides by re.  Split
    // against the solvent dissipation instead; flagged so reports can say so.
    u.re_zero_fallback = true;
    u.a_coef = 0.5 * (1.0 - p.r);
    u.b_coef = std::min(1.0, p.diff) -
               k * (9.0 * p.we * p.we / (2.0 * (1.0 - p.r)) +
                    2.0 * std::abs(p.a) * p.we);
  }
  return u;
}

ConstantSet build_constants(const FluidParams& p, double c_omega, double f_norm) {
  ConstantSet s;
  s.c_omega = c_omega;
  s.f_norm = f_norm;
  s.coeffs = energy_coeffs(p, c_omega, f_norm);
  s.c1 = existence_number(p, c_omega, f_norm);
  s.existence_ok = s.c1 <= 1.0;
  if (s.existence_ok) {
    s.radius = energy_radius(p, c_omega, f_norm);
    s.uniqueness = uniqueness_coefficients(p, c_omega, s.radius.value);
  }
  return s;
}

}  // namespace oldroyd
