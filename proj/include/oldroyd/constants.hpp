#pragma once

// Closed-form constants of the well-posedness certificates.
//
// The a-priori analysis of the coupled velocity/stress fixed-point map bounds
// its pairing with the state from below by the cubic
//
//     (P(xi), xi)_X  >=  ||xi||_X ( -alpha ||xi||_X^2 + beta ||xi||_X - gamma )
//
// in the combined norm  ||xi||_X^2 = 2 r ||u||_V^2 + ||sigma||_W^2.  The three
// coefficients, the derived smallness number (existence_number), the radius of
// the invariant ball (energy_radius), and the sufficient uniqueness
// coefficients all live here; everything is elementary arithmetic on
// FluidParams plus two measured inputs:
//
//   c_omega  discrete Sobolev embedding constant  ||.||_L4 <= c_omega ||.||_W
//   f_norm   dual (H^-1-type) norm of the body force on the discrete space

#include <stdexcept>

#include "oldroyd/params.hpp"

namespace oldroyd {

struct EnergyCoeffs {
  double alpha = 0.0;  // cubic coefficient, vanishes iff a*we == 0
  double beta = 0.0;   // coercivity floor min(1 - r, diff)
  double gamma = 0.0;  // forcing load sqrt(2 r) * f_norm
};

EnergyCoeffs energy_coeffs(const FluidParams& p, double c_omega, double f_norm);

// Smallness number; the invariant-ball construction requires it <= 1.
// Equals 4 * alpha * gamma / beta^2 (cross-checked in tests).
double existence_number(const FluidParams& p, double c_omega, double f_norm);

// Thrown by energy_radius when existence_number > 1: the a-priori construction
// does not apply to these data.
struct ExistenceThresholdExceeded : std::domain_error {
  double c1;
  explicit ExistenceThresholdExceeded(double c1_);
};

enum class RadiusBranch {
  small_root,    // a != 0: smaller positive root of the quadratic factor
  corotational,  // a == 0 (or we == 0): linear factor, radius gamma / beta
  degenerate,    // f_norm == 0: radius 0, any state norm bound is vacuous
};

struct EnergyRadius {
  double value = 0.0;
  RadiusBranch branch = RadiusBranch::degenerate;
};

// Radius of the certified ball ||xi||_X <= value.  Throws
// ExistenceThresholdExceeded when existence_number > 1 (up to roundoff slack).
EnergyRadius energy_radius(const FluidParams& p, double c_omega, double f_norm);

struct UniquenessCoeffs {
  double a_coef = 0.0;  // velocity-side coefficient; > 0 required
  double b_coef = 0.0;  // stress-side coefficient; > 0 required
  bool re_zero_fallback = false;  // inertialess Young split was used
  bool ok() const { return a_coef > 0.0 && b_coef > 0.0; }
};

// Sufficient (not necessary) smallness coefficients for uniqueness of
// solutions in the certified ball of radius c2.  For re = 0 the standard split
// divides by re; a fallback Young split is used instead and flagged.
UniquenessCoeffs uniqueness_coefficients(const FluidParams& p, double c_omega,
                                         double c2);

// Everything above bundled for reporting.
struct ConstantSet {
  double c_omega = 0.0;
  double f_norm = 0.0;
  EnergyCoeffs coeffs;
  double c1 = 0.0;              // existence_number
  bool existence_ok = false;    // c1 <= 1
  EnergyRadius radius;          // defined only when existence_ok
  UniquenessCoeffs uniqueness;  // computed from radius.value when existence_ok
};

ConstantSet build_constants(const FluidParams& p, double c_omega, double f_norm);

}  // namespace oldroyd
