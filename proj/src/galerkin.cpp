#include "oldroyd/galerkin.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "oldroyd/norms.hpp"

namespace oldroyd {

namespace {

// Component-blocked copy of the scalar stiffness acting on [u1; u2].
SpMat blocked_stiffness(const FunctionSpaces& sp) {
  const int n = sp.scalar_dim();
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(2 * sp.scalar_stiffness().nonZeros());
  for (int c = 0; c < 2; ++c)
    for (int outer = 0; outer < sp.scalar_stiffness().outerSize(); ++outer)
      for (SpMat::InnerIterator it(sp.scalar_stiffness(), outer); it; ++it)
        trip.emplace_back(c * n + it.row(), c * n + it.col(), it.value());
  SpMat k(2 * n, 2 * n);
  k.setFromTriplets(trip.begin(), trip.end());
  return k;
}

}  // namespace

DivFreeProjector::DivFreeProjector(const FunctionSpaces& sp) : sp_(&sp) {
  ni_ = static_cast<int>(sp.interior_velocity().size());
  np_ = sp.pressure_dim();
  const SpMat kint = sp.restrict_velocity(blocked_stiffness(sp));
  const auto stokes = [&] {
    FluidParams unit;
    unit.re = 0.0;
    unit.we = 0.0;
    unit.r = 0.5;
    unit.a = 0.0;
    unit.diff = 1.0;
    return assemble_stokes_blocks(sp, unit);
  }();
  const SpMat bint = sp.restrict_cols_velocity(stokes.divergence);

  // Bordered saddle matrix:
  //   [ K   B^T  0 ]
  //   [ B   0    m ]   with m the pressure-integral border fixing the
  //   [ 0   m^T  0 ]   constant multiplier mode.
  const int dim = ni_ + np_ + 1;
  std::vector<Eigen::Triplet<double>> trip;
  for (int outer = 0; outer < kint.outerSize(); ++outer)
    for (SpMat::InnerIterator it(kint, outer); it; ++it)
      trip.emplace_back(it.row(), it.col(), it.value());
  for (int outer = 0; outer < bint.outerSize(); ++outer)
    for (SpMat::InnerIterator it(bint, outer); it; ++it) {
      trip.emplace_back(ni_ + it.row(), it.col(), it.value());
      trip.emplace_back(it.col(), ni_ + it.row(), it.value());
    }
  const Eigen::VectorXd& m = sp.pressure_integral();
  for (int q = 0; q < np_; ++q) {
    trip.emplace_back(ni_ + q, ni_ + np_, m[q]);
    trip.emplace_back(ni_ + np_, ni_ + q, m[q]);
  }
  SpMat saddle(dim, dim);
  saddle.setFromTriplets(trip.begin(), trip.end());

  lu_ = std::make_unique<Eigen::SparseLU<SpMat>>();
  lu_->compute(saddle);
  if (lu_->info() != Eigen::Success)
    throw std::runtime_error("divergence-free projector: saddle factorization failed");
}

Eigen::VectorXd DivFreeProjector::solve_saddle(const Eigen::VectorXd& interior_load) const {
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(ni_ + np_ + 1);
  rhs.head(ni_) = interior_load;
  const Eigen::VectorXd sol = lu_->solve(rhs);
  return sp_->scatter_interior_velocity(sol.head(ni_));
}

Eigen::VectorXd DivFreeProjector::project(const Eigen::VectorXd& velocity) const {
  const SpMat k = blocked_stiffness(*sp_);
  return solve_saddle(sp_->gather_interior_velocity(k * velocity));
}

Eigen::VectorXd DivFreeProjector::riesz(const Eigen::VectorXd& velocity_load) const {
  return solve_saddle(sp_->gather_interior_velocity(velocity_load));
}

PkApply apply_pk(const FunctionSpaces& sp, const FluidParams& p, const Forcing& f,
                 const State& xi, const DivFreeProjector* proj) {
  const int n = sp.scalar_dim();
  const auto stokes = assemble_stokes_blocks(sp, p);
  const auto stress = assemble_stress_blocks(sp, p, xi.velocity);

  PkApply out;
  out.vel_load = stokes.viscous * xi.velocity + stokes.coupling * xi.stress;
  if (p.re != 0.0)
    out.vel_load += p.re * (assemble_convection(sp, xi.velocity) * xi.velocity);
  if (!f.zero()) out.vel_load -= assemble_velocity_load(sp, f.field);
  out.stress_load = stress.system() * xi.stress - stress.source * xi.velocity;

  if (proj) out.vel_riesz = proj->riesz(out.vel_load);
  out.stress_riesz.resize(3 * n);
  for (int c = 0; c < 3; ++c)
    out.stress_riesz.segment(c * n, n) =
        sp.h1_factor().solve(out.stress_load.segment(c * n, n)) / kStressWeight[c];
  return out;
}

double pk_pairing(const FunctionSpaces& sp, const FluidParams& p, const PkApply& pk,
                  const State& xi) {
  if (pk.vel_riesz.size() == 0)
    throw std::logic_error("pk_pairing: apply_pk was run without a projector");
  const int n = sp.scalar_dim();
  const auto& k = sp.scalar_stiffness();
  const auto& m = sp.scalar_mass();
  double acc = 0.0;
  for (int c = 0; c < 2; ++c)
    acc += 2.0 * p.r *
           pk.vel_riesz.segment(c * n, n).dot(k * xi.velocity.segment(c * n, n));
  for (int c = 0; c < 3; ++c) {
    const Eigen::VectorXd sc = xi.stress.segment(c * n, n);
    acc += kStressWeight[c] * pk.stress_riesz.segment(c * n, n).dot(m * sc + k * sc);
  }
  return acc;
}

double pk_pairing_functional(const FluidParams& p, const PkApply& pk, const State& xi) {
  // Boundary velocity entries are zero, so the full-vector dot equals the
  // pairing against the no-slip test space.
  return 2.0 * p.r * pk.vel_load.dot(xi.velocity) + pk.stress_load.dot(xi.stress);
}

PkEnergyTerms pk_energy_terms(const FunctionSpaces& sp, const FluidParams& p,
                              const Forcing& f, const State& xi) {
  const auto stress = assemble_stress_blocks(sp, p, xi.velocity);
  PkEnergyTerms t;
  const double nv = norm_V(sp, xi.velocity);
  t.viscous = 2.0 * p.r * (1.0 - p.r) * nv * nv;
  t.stress_l2 = xi.stress.dot(stress.mass * xi.stress);
  t.stress_diff = xi.stress.dot(stress.diffusion * xi.stress);
  if (stress.coupling.nonZeros() > 0)
    t.coupling_ga = xi.stress.dot(stress.coupling * xi.stress);
  if (!f.zero())
    t.forcing = -2.0 * p.r * assemble_velocity_load(sp, f.field).dot(xi.velocity);
  return t;
}

ResidualNorms weak_residual(const FunctionSpaces& sp, const FluidParams& p,
                            const Forcing& f, const State& xi,
                            const TensorField& stress_source) {
  const int n = sp.scalar_dim();
  const auto stokes = assemble_stokes_blocks(sp, p);
  const auto stress = assemble_stress_blocks(sp, p, xi.velocity);

  Eigen::VectorXd r_u = stokes.viscous * xi.velocity + stokes.coupling * xi.stress -
                        SpMat(stokes.divergence.transpose()) * xi.pressure;
  if (p.re != 0.0)
    r_u += p.re * (assemble_convection(sp, xi.velocity) * xi.velocity);
  if (!f.zero()) r_u -= assemble_velocity_load(sp, f.field);

  Eigen::VectorXd r_s = stress.system() * xi.stress - stress.source * xi.velocity;
  if (stress_source) r_s -= assemble_stress_load(sp, stress_source);

  ResidualNorms out;
  double acc = 0.0;
  for (int c = 0; c < 2; ++c) {
    const Eigen::VectorXd rc = sp.gather_interior_scalar(r_u.segment(c * n, n));
    acc += rc.dot(sp.dirichlet_stiffness_factor().solve(rc));
  }
  out.momentum = std::sqrt(std::max(acc, 0.0));
  acc = 0.0;
  for (int c = 0; c < 3; ++c) {
    const Eigen::VectorXd rc = r_s.segment(c * n, n);
    acc += rc.dot(sp.h1_factor().solve(rc)) / kStressWeight[c];
  }
  out.stress = std::sqrt(std::max(acc, 0.0));
  return out;
}

State random_state(const FunctionSpaces& sp, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> gauss;
  State xi = sp.zero_state();
  const int n = sp.scalar_dim();
  for (int c = 0; c < 2; ++c)
    for (int i = 0; i < n; ++i)
      if (!sp.dof_on_boundary()[i]) xi.velocity[c * n + i] = gauss(rng);
  for (int i = 0; i < 3 * n; ++i) xi.stress[i] = gauss(rng);
  return xi;
}

void rescale_state(const FunctionSpaces& sp, const FluidParams& p, State& xi,
                   double target_norm) {
  const double norm = norm_X(sp, p, xi);
  if (norm <= 0.0)
    throw std::invalid_argument("rescale_state: zero state cannot be rescaled");
  const double s = target_norm / norm;
  xi.velocity *= s;
  xi.stress *= s;
}

}  // namespace oldroyd
