#pragma once

// Decoupled fixed-point solver for the coupled velocity-pressure-stress
// system. Each sweep
//
//   1. solves the momentum/continuity saddle problem with the convection
//      field and the stress divergence frozen at the previous iterate,
//   2. solves the linear stress equation transported by the new velocity,
//   3. relaxes the stress update.
//
// Convergence is declared on the weak residual of the full coupled system
// measured in dual norms, so a "converged" report certifies a genuine
// discrete solution independently of the sweep that produced it.

#include <vector>

#include "oldroyd/forcing.hpp"
#include "oldroyd/galerkin.hpp"
#include "oldroyd/params.hpp"
#include "oldroyd/spaces.hpp"

namespace oldroyd {

enum class SolveStatus {
  converged,
  max_iter_exceeded,
  diverged,
  linear_solve_failure,
};

const char* to_string(SolveStatus s);

struct SolverOptions {
  double tol = 1e-10;    // weak-residual tolerance (combined dual norms)
  int max_iter = 400;
  // Stress relaxation factor in (0, 1]; nonpositive selects automatically:
  // full steps when the problem is known to be small, damped otherwise.
  double relaxation = -1.0;
  // A-priori size of the expected solution (e.g. the certified ball radius);
  // drives the automatic relaxation choice.
  double smallness_hint = 0.0;
  // Iterates escaping far beyond this radius while the residual keeps
  // growing are declared divergent.
  double divergence_radius = 0.0;
  bool use_initial = false;  // start from the caller's state instead of zero
};

struct IterationRecord {
  double momentum_residual = 0.0;
  double stress_residual = 0.0;
  double state_norm_x = 0.0;
};

struct SolveReport {
  SolveStatus status = SolveStatus::max_iter_exceeded;
  int iterations = 0;
  double momentum_residual = 0.0;
  double stress_residual = 0.0;
  double relaxation_used = 1.0;
  std::vector<IterationRecord> history;
  bool converged() const { return status == SolveStatus::converged; }
};

// Solves in place; xi supplies the initial guess when opts.use_initial is
// set and always carries the final iterate on return. The optional tensor
// field is an extra stress-equation source (manufactured benchmarks).
SolveReport solve_picard(const FunctionSpaces& sp, const FluidParams& p,
                         const Forcing& f, const SolverOptions& opts, State& xi,
                         const TensorField& stress_source = {});

// Shift the pressure to exact zero weighted mean.
void fix_pressure_mean(const FunctionSpaces& sp, State& xi);

}  // namespace oldroyd
