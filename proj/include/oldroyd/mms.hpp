#pragma once

// Manufactured solutions: closed-form field triples substituted into the
// strong equations to produce forcings with a known exact solution, plus the
// error norms and convergence-order studies built on them.
//
// The momentum forcing f is the physical one; the stress equation gets an
// extra source g that makes arbitrary stress fields reachable.  g is a
// verification-only device: physics runs never pass one, and the forcing for
// a field triple that satisfies the constitutive relation exactly is
// identically zero (asserted in tests).

#include <functional>
#include <vector>

#include "oldroyd/forcing.hpp"
#include "oldroyd/params.hpp"
#include "oldroyd/solver.hpp"
#include "oldroyd/spaces.hpp"
#include "oldroyd/tensor.hpp"

namespace oldroyd {

// Closed-form solution triple with the derivative closures the strong form
// needs.  Conventions: the gradient is G_ij = du_i/dx_j; stress partials are
// entrywise.
struct ManufacturedSolution {
  VectorField velocity;
  ScalarField pressure;
  TensorField stress;

  std::function<Mat2(double, double)> velocity_grad;
  VectorField velocity_laplacian;
  VectorField pressure_grad;
  TensorField stress_dx, stress_dy;
  TensorField stress_laplacian;
};

// Benchmark triple on the unit square:
//   velocity  u0 * curl of the bump stream function x^2(1-x)^2 y^2(1-y)^2
//             (exactly divergence free, exactly zero on the boundary),
//   pressure  p0 * sin(pi x) cos(pi y)  (exact zero mean),
//   stress    s0 * cosine products, one shape per entry, all with zero
//             normal derivative on the boundary (natural-condition
//             compatible, so the discrete stress converges to the field
//             itself rather than to a flux-corrected neighbor).
ManufacturedSolution default_benchmark(double u0 = 1.0, double s0 = 0.1,
                                       double p0 = 0.1);

struct MmsForcing {
  Forcing momentum;    // f, by substitution into the momentum equation
  TensorField stress;  // g, the verification-only extra stress source
};

MmsForcing mms_forcing(const ManufacturedSolution& ms, const FluidParams& p);

// Dof interpolant of the triple; the pressure is shifted to exact zero
// weighted mean so it is comparable with solver output.
State interpolate(const FunctionSpaces& sp, const ManufacturedSolution& ms);

struct ErrorNorms {
  double velocity_h1 = 0.0;  // V norm of the difference to the interpolant
  double pressure_l2 = 0.0;  // after removing the mean of the difference
  double stress_w = 0.0;     // W norm
};

ErrorNorms error_norms(const FunctionSpaces& sp, const State& state,
                       const ManufacturedSolution& ms);

struct ConvergenceLevel {
  int n = 0;
  ErrorNorms errors;
  SolveReport report;
};

struct ConvergenceStudy {
  std::vector<ConvergenceLevel> levels;
  // Observed orders between successive levels, log2 of the error ratios.
  std::vector<double> velocity_order, pressure_order, stress_order;
  // All final-level errors at roundoff scale; the orders are then noise.
  bool saturated = false;
};

// Solve the manufactured problem on meshes n = base_n * 2^l from zero
// initial states and report errors and observed orders.  Throws
// std::runtime_error if any level fails to converge.
ConvergenceStudy convergence_study(const ManufacturedSolution& ms, const FluidParams& p,
                                   int levels, int base_n = 8,
                                   const SolverOptions& sopts = {});

}  // namespace oldroyd
