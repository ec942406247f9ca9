#include "oldroyd/solver.hpp"

#include <Eigen/SparseLU>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "oldroyd/norms.hpp"

namespace oldroyd {

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::converged: return "converged";
    case SolveStatus::max_iter_exceeded: return "max_iter_exceeded";
    case SolveStatus::diverged: return "diverged";
    case SolveStatus::linear_solve_failure: return "linear_solve_failure";
  }
  return "unknown";
}

namespace {

// Component-blocked scalar matrix acting on a stacked vector field.
void append_blocked(std::vector<Eigen::Triplet<double>>& trip, const SpMat& scalar,
                    int blocks, int n, double factor) {
  for (int c = 0; c < blocks; ++c)
    for (int outer = 0; outer < scalar.outerSize(); ++outer)
      for (SpMat::InnerIterator it(scalar, outer); it; ++it)
        trip.emplace_back(c * n + it.row(), c * n + it.col(), factor * it.value());
}

}  // namespace

SolveReport solve_picard(const FunctionSpaces& sp, const FluidParams& p,
                         const Forcing& f, const SolverOptions& opts, State& xi,
                         const TensorField& stress_source) {
  p.validate();
  const int n = sp.scalar_dim();
  const int ni = static_cast<int>(sp.interior_velocity().size());
  const int np = sp.pressure_dim();
  const int dim = ni + np + 1;

  SolveReport report;
  report.relaxation_used = opts.relaxation > 0.0
                               ? opts.relaxation
                               : (opts.smallness_hint <= 0.5 ? 1.0 : 0.5);
  const double theta = report.relaxation_used;

  if (!opts.use_initial) xi = sp.zero_state();

  const auto stokes = assemble_stokes_blocks(sp, p);
  const SpMat bint = sp.restrict_cols_velocity(stokes.divergence);
  const Eigen::VectorXd fvec = f.zero() ? Eigen::VectorXd::Zero(2 * n)
                                        : assemble_velocity_load(sp, f.field);
  const Eigen::VectorXd gvec = stress_source ? assemble_stress_load(sp, stress_source)
                                             : Eigen::VectorXd::Zero(3 * n);

  // Constant part of the bordered momentum saddle:
  //   [ A(u)  -B^T  0 ]      A(u) = viscous + re * convection(u),
  //   [ -B     0    m ]      m = pressure integrals (zero-mean border).
  //   [ 0      m^T  0 ]
  std::vector<Eigen::Triplet<double>> fixed_trip;
  for (int outer = 0; outer < bint.outerSize(); ++outer)
    for (SpMat::InnerIterator it(bint, outer); it; ++it) {
      fixed_trip.emplace_back(ni + it.row(), it.col(), -it.value());
      fixed_trip.emplace_back(it.col(), ni + it.row(), -it.value());
    }
  const Eigen::VectorXd& pint = sp.pressure_integral();
  for (int q = 0; q < np; ++q) {
    fixed_trip.emplace_back(ni + q, ni + np, pint[q]);
    fixed_trip.emplace_back(ni + np, ni + q, pint[q]);
  }

  Eigen::SparseLU<SpMat> momentum_lu;
  Eigen::SparseLU<SpMat> stress_lu;
  bool momentum_ready = false;  // valid factorization of the current operator
  bool stress_ready = false;
  bool momentum_analyzed = false;
  bool stress_analyzed = false;

  const auto factor_momentum = [&](const Eigen::VectorXd& velocity) -> bool {
    SpMat a = stokes.viscous;
    if (p.re != 0.0) a = a + SpMat(p.re * assemble_convection(sp, velocity));
    std::vector<Eigen::Triplet<double>> trip = fixed_trip;
    const SpMat aint = sp.restrict_velocity(a);
    for (int outer = 0; outer < aint.outerSize(); ++outer)
      for (SpMat::InnerIterator it(aint, outer); it; ++it)
        trip.emplace_back(it.row(), it.col(), it.value());
    SpMat saddle(dim, dim);
    saddle.setFromTriplets(trip.begin(), trip.end());
    if (!momentum_analyzed) {
      momentum_lu.analyzePattern(saddle);
      momentum_analyzed = true;
    }
    momentum_lu.factorize(saddle);
    return momentum_lu.info() == Eigen::Success;
  };

  const auto factor_stress = [&](const StressBlocks& blocks) -> bool {
    const SpMat system = blocks.system();
    if (!stress_analyzed) {
      stress_lu.analyzePattern(system);
      stress_analyzed = true;
    }
    stress_lu.factorize(system);
    return stress_lu.info() == Eigen::Success;
  };

  double prev_total = -1.0;
  int growth_streak = 0;
  const double escape = 10.0 * std::max(opts.divergence_radius, 1.0);

  StressBlocks blocks;
  bool blocks_valid = false;  // without transport the blocks never change

  for (int iter = 1; iter <= opts.max_iter; ++iter) {
    // Momentum/continuity sweep with frozen convection and stress.
    if (!momentum_ready) {
      if (!factor_momentum(xi.velocity)) {
        report.status = SolveStatus::linear_solve_failure;
        report.iterations = iter;
        return report;
      }
      if (p.re == 0.0) momentum_ready = true;  // operator never changes
    }
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(dim);
    rhs.head(ni) =
        sp.gather_interior_velocity(fvec - stokes.coupling * xi.stress);
    const Eigen::VectorXd sol = momentum_lu.solve(rhs);
    xi.velocity = sp.scatter_interior_velocity(sol.head(ni));
    xi.pressure = sol.segment(ni, np);

    // Stress sweep transported by the updated velocity.
    if (!(p.we == 0.0 && blocks_valid)) {
      blocks = assemble_stress_blocks(sp, p, xi.velocity);
      blocks_valid = true;
    }
    if (!stress_ready) {
      if (!factor_stress(blocks)) {
        report.status = SolveStatus::linear_solve_failure;
        report.iterations = iter;
        return report;
      }
      if (p.we == 0.0) stress_ready = true;  // operator never changes
    }
    const Eigen::VectorXd tilde =
        stress_lu.solve(Eigen::VectorXd(blocks.source * xi.velocity + gvec));
    xi.stress = (1.0 - theta) * xi.stress + theta * tilde;

    // Weak residual of the coupled system at the new iterate. All blocks
    // except the convection operator are already available at this velocity.
    Eigen::VectorXd r_u = stokes.viscous * xi.velocity +
                          stokes.coupling * xi.stress -
                          SpMat(stokes.divergence.transpose()) * xi.pressure - fvec;
    if (p.re != 0.0)
      r_u += p.re * (assemble_convection(sp, xi.velocity) * xi.velocity);
    const Eigen::VectorXd r_s =
        blocks.system() * xi.stress - blocks.source * xi.velocity - gvec;

    IterationRecord rec;
    double acc = 0.0;
    for (int c = 0; c < 2; ++c) {
      const Eigen::VectorXd rc = sp.gather_interior_scalar(r_u.segment(c * n, n));
      acc += rc.dot(sp.dirichlet_stiffness_factor().solve(rc));
    }
    rec.momentum_residual = std::sqrt(std::max(acc, 0.0));
    acc = 0.0;
    for (int c = 0; c < 3; ++c) {
      const Eigen::VectorXd rc = r_s.segment(c * n, n);
      acc += rc.dot(sp.h1_factor().solve(rc)) / kStressWeight[c];
    }
    rec.stress_residual = std::sqrt(std::max(acc, 0.0));
    rec.state_norm_x = norm_X(sp, p, xi);
    report.history.push_back(rec);
    report.iterations = iter;
    report.momentum_residual = rec.momentum_residual;
    report.stress_residual = rec.stress_residual;

    const double total = std::sqrt(rec.momentum_residual * rec.momentum_residual +
                                   rec.stress_residual * rec.stress_residual);
    if (total <= opts.tol) {
      report.status = SolveStatus::converged;
      return report;
    }
    growth_streak = (prev_total >= 0.0 && total > prev_total) ? growth_streak + 1 : 0;
    prev_total = total;
    if (growth_streak >= 5 && rec.state_norm_x > escape) {
      report.status = SolveStatus::diverged;
      return report;
    }
  }
  report.status = SolveStatus::max_iter_exceeded;
  return report;
}

void fix_pressure_mean(const FunctionSpaces& sp, State& xi) {
  const Eigen::VectorXd& m = sp.pressure_integral();
  const double total = m.sum();
  if (total <= 0.0) throw std::runtime_error("degenerate pressure weights");
  xi.pressure.array() -= m.dot(xi.pressure) / total;
}

}  // namespace oldroyd
