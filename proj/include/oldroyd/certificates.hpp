#pragma once

// Certificates of the well-posedness theory on the discrete space: the
// measured Sobolev embedding constant, the a-priori energy bound, the
// sphere sign condition behind the existence argument, and the sufficient
// uniqueness coefficients.
//
// Every certified inequality is a statement about the discrete space the
// computed solution lives in: the embedding constant and the forcing norm
// are measured there, and the skew-symmetrized forms make the continuous
// inequality chain valid verbatim.

#include <string>
#include <vector>

#include "oldroyd/constants.hpp"
#include "oldroyd/forcing.hpp"
#include "oldroyd/galerkin.hpp"
#include "oldroyd/solver.hpp"
#include "oldroyd/spaces.hpp"

namespace oldroyd {

struct COmegaOptions {
  int max_iter = 200;         // ascent budget per start
  double tol = 1e-11;         // relative stabilization of the ratio
  int restarts = 5;           // random starts beyond the constant field
  unsigned seed = 12345;
  int audit_samples = 1000;   // random tensor fields guarding the transfer
  // Deterministic additional starts (e.g. a coarse maximizer prolonged onto
  // this mesh, which makes refinement monotonicity structural).
  std::vector<Eigen::VectorXd> extra_starts;
};

struct COmegaEstimate {
  double value = 0.0;         // certified constant (after the tensor audit)
  double scalar_ratio = 0.0;  // best ratio reached by the scalar ascent
  double audit_max_ratio = 0.0;
  bool audited_raise = false; // a tensor sample beat the scalar maximum
  int iterations = 0;         // ascent length of the winning start
  Eigen::VectorXd maximizer;  // winning scalar field, H1-normalized
};

// Largest ratio ||tau||_L4 / ||tau||_W over the discrete scalar space, by
// normalized fixed-point ascent on the Rayleigh-type quotient (the constant
// field is an exact fixed point with ratio 1 on the unit square, hence one
// start; random restarts escape it). The scalar maximizer is then audited
// against random tensor fields; any violation raises the constant to the
// observed ratio. Throws std::runtime_error if no start stabilizes.
COmegaEstimate estimate_c_omega(const FunctionSpaces& sp, const COmegaOptions& opts = {});

// (c_a(grad u) sigma, sigma) without the Weissenberg factor: the bilinear
// form behind the neutrality identity (a = 0) and the sampling bound
// |(c_a(grad u) s, s)| <= 2|a| C^2 ||u||_V ||s||_W^2.
double coupling_pairing(const FunctionSpaces& sp, double a,
                        const Eigen::VectorXd& velocity, const Eigen::VectorXd& stress);

// Position of a state relative to the roots of the energy quadratic.
enum class SolutionBranch {
  small_root,  // inside the certified ball
  large_root,  // at or beyond the second root
  degenerate,  // between roots, or no certificate applies
};
const char* to_string(SolutionBranch b);

struct Certificate {
  double c_omega_h = 0.0;
  double f_norm_h = 0.0;
  ConstantSet constants;
  bool existence_ok = false;   // smallness number <= 1
  bool bound_ok = false;       // ||xi||_X^2 <= c2^2 + 1e-8
  bool uniqueness_ok = false;  // both uniqueness coefficients positive
  SolutionBranch branch = SolutionBranch::degenerate;
  double state_norm_x = 0.0;
  double slack = 0.0;          // ||xi||_X^2 - c2^2 (negative = margin)
  std::string notes;
};

// Evaluate all verdicts at a state (expected converged; the caller owns
// that check). Never throws on threshold violations: an inadmissible
// parameter point reports existence_ok = false with empty bound claims.
Certificate energy_certificate(const FunctionSpaces& sp, const FluidParams& p,
                               double c_omega_h, double f_norm_h, const State& xi);

struct SphereSignReport {
  int n_samples = 0;
  double radius = 0.0;       // sphere radius = certified ball radius
  double min_pairing = 0.0;
  double epsilon = 0.0;      // tolerance floor 1e-10 (1 + radius^3)
  bool ok = false;           // min_pairing >= -epsilon
};

// Sample random states on the sphere ||xi||_X = c2 (velocity projected to
// the weakly divergence-free subspace first) and evaluate the energy
// pairing; the existence argument needs it nonnegative there.
SphereSignReport sphere_sign_test(const FunctionSpaces& sp, const FluidParams& p,
                                  const Forcing& f, const ConstantSet& constants,
                                  int n_samples, unsigned seed);

struct UniquenessReport {
  UniquenessCoeffs coeffs;
  bool ok = false;
  std::string condition;  // which smallness mechanism carries the verdict
};

UniquenessReport uniqueness_certificate(const FluidParams& p, double c_omega_h,
                                        double c2);

}  // namespace oldroyd
