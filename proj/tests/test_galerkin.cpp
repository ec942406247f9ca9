// Divergence-free projection, the three routes to the energy pairing, and
// the dual-norm residuals.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oldroyd/galerkin.hpp"
#include "oldroyd/norms.hpp"

using namespace oldroyd;

namespace {

FluidParams generic_params() {
  FluidParams p;
  p.re = 1.0;
  p.we = 0.2;
  p.r = 0.4;
  p.a = 0.7;
  p.diff = 0.5;
  p.validate();
  return p;
}

SpMat blocked_k(const FunctionSpaces& sp) {
  const int n = sp.scalar_dim();
  std::vector<Eigen::Triplet<double>> trip;
  for (int c = 0; c < 2; ++c)
    for (int outer = 0; outer < sp.scalar_stiffness().outerSize(); ++outer)
      for (SpMat::InnerIterator it(sp.scalar_stiffness(), outer); it; ++it)
        trip.emplace_back(c * n + it.row(), c * n + it.col(), it.value());
  SpMat k(2 * n, 2 * n);
  k.setFromTriplets(trip.begin(), trip.end());
  return k;
}

}  // namespace

TEST_CASE("projection: constraint, idempotence, orthogonality, contraction") {
  FunctionSpaces sp(unit_square_mesh(4));
  DivFreeProjector proj(sp);
  const auto stokes = assemble_stokes_blocks(sp, generic_params());

  const State raw = random_state(sp, 7);
  const Eigen::VectorXd pu = proj.project(raw.velocity);
  const double scale = norm_V(sp, raw.velocity);

  // Discrete divergence vanishes against every pressure test function.
  CHECK((stokes.divergence * pu).norm() < 1e-10 * scale);
  // Idempotent.
  CHECK((proj.project(pu) - pu).norm() < 1e-10 * scale);
  // Energy-orthogonal: the defect is V-orthogonal to the constrained space.
  const Eigen::VectorXd other = proj.project(random_state(sp, 8).velocity);
  const Eigen::VectorXd defect = raw.velocity - pu;
  CHECK(std::abs(defect.dot(blocked_k(sp) * other)) < 1e-9 * scale * norm_V(sp, other));
  // Never increases the energy seminorm.
  CHECK(norm_V(sp, pu) <= norm_V(sp, raw.velocity) * (1 + 1e-12));
  // Keeps the no-slip boundary exactly.
  const int n = sp.scalar_dim();
  for (int c = 0; c < 2; ++c)
    for (int i = 0; i < n; ++i)
      if (sp.dof_on_boundary()[i]) CHECK(pu[c * n + i] == 0.0);
}

TEST_CASE("constrained Riesz representative inverts the energy product") {
  FunctionSpaces sp(unit_square_mesh(4));
  DivFreeProjector proj(sp);

  // Manufacture a load from a known divergence-free field; its constrained
  // representative must be that field.
  const Eigen::VectorXd z = proj.project(random_state(sp, 17).velocity);
  const Eigen::VectorXd load = blocked_k(sp) * z;
  const Eigen::VectorXd zr = proj.riesz(load);
  CHECK((zr - z).norm() < 1e-9 * (1 + z.norm()));

  // Pairing property against further divergence-free fields.
  for (unsigned seed : {21u, 22u, 23u}) {
    const Eigen::VectorXd v = proj.project(random_state(sp, seed).velocity);
    const double lhs = zr.dot(blocked_k(sp) * v);
    const double rhs = load.dot(v);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
  }
}

TEST_CASE("energy pairing: three routes agree at generic states") {
  FunctionSpaces sp(unit_square_mesh(3));
  DivFreeProjector proj(sp);
  const auto p = generic_params();
  Forcing f;
  f.field = [](double x, double y) { return Vec2{std::sin(x + y), x - 0.3}; };

  for (unsigned seed : {31u, 32u, 33u, 34u}) {
    State xi = random_state(sp, seed);
    xi.velocity = proj.project(xi.velocity);

    const PkApply pk = apply_pk(sp, p, f, xi, &proj);
    const double via_riesz = pk_pairing(sp, p, pk, xi);
    const double via_loads = pk_pairing_functional(p, pk, xi);
    const PkEnergyTerms terms = pk_energy_terms(sp, p, f, xi);
    const double scale = terms.abs_sum() + 1.0;

    CHECK(std::abs(via_loads - terms.total()) < 1e-12 * scale);
    CHECK(std::abs(via_riesz - terms.total()) < 1e-10 * scale);
  }
}

TEST_CASE("corotational coupling term vanishes in the expansion") {
  FunctionSpaces sp(unit_square_mesh(3));
  DivFreeProjector proj(sp);
  FluidParams p = generic_params();
  p.a = 0.0;
  Forcing none;

  State xi = random_state(sp, 41);
  xi.velocity = proj.project(xi.velocity);
  const PkEnergyTerms terms = pk_energy_terms(sp, p, none, xi);
  CHECK(std::abs(terms.coupling_ga) < 1e-12 * terms.abs_sum());
  // Without forcing every remaining term is nonnegative.
  CHECK(terms.viscous >= 0.0);
  CHECK(terms.stress_l2 >= 0.0);
  CHECK(terms.stress_diff >= 0.0);
  CHECK(terms.forcing == 0.0);
  CHECK(terms.total() > 0.0);
}

TEST_CASE("weak residual of the zero state is the forcing norm") {
  FunctionSpaces sp(unit_square_mesh(4));
  const auto p = generic_params();
  Forcing f;
  f.field = [](double, double) { return Vec2{1.0, 0.0}; };

  const State zero = sp.zero_state();
  const ResidualNorms rn = weak_residual(sp, p, f, zero);
  CHECK(rn.stress == 0.0);
  CHECK(rn.momentum ==
        doctest::Approx(h_minus1_norm_field(sp, f.field)).epsilon(1e-12));

  Forcing none;
  const ResidualNorms rz = weak_residual(sp, p, none, zero);
  CHECK(rz.momentum == 0.0);
  CHECK(rz.stress == 0.0);
  CHECK(rz.total() == 0.0);
}

TEST_CASE("random states carry the documented structure") {
  FunctionSpaces sp(unit_square_mesh(3));
  const auto p = generic_params();
  const int n = sp.scalar_dim();

  State xi = random_state(sp, 51);
  for (int c = 0; c < 2; ++c)
    for (int i = 0; i < n; ++i)
      if (sp.dof_on_boundary()[i]) CHECK(xi.velocity[c * n + i] == 0.0);
  CHECK(xi.pressure.norm() == 0.0);
  CHECK(xi.stress.norm() > 0.0);

  // Deterministic in the seed, distinct across seeds.
  const State again = random_state(sp, 51);
  CHECK((again.velocity - xi.velocity).norm() == 0.0);
  CHECK((again.stress - xi.stress).norm() == 0.0);
  CHECK((random_state(sp, 52).stress - xi.stress).norm() > 0.0);

  rescale_state(sp, p, xi, 0.37);
  CHECK(norm_X(sp, p, xi) == doctest::Approx(0.37).epsilon(1e-12));
  State zero = sp.zero_state();
  CHECK_THROWS_AS(rescale_state(sp, p, zero, 1.0), std::invalid_argument);
}
