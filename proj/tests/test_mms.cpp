// Manufactured solutions: structural identities of the benchmark triple, a
// finite-difference oracle for both substituted forcings, exactness of the
// interpolant error, saturation on a triple inside the FE spaces, and the
// observed convergence orders of the full nonlinear pipeline.
//
// The finite-difference oracle rebuilds the strong form from the *value*
// closures only (central differences, step 1e-4), so every hand-derived
// derivative closure is checked against an independent evaluation.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oldroyd/mesh.hpp"
#include "oldroyd/mms.hpp"
#include "oldroyd/norms.hpp"

using namespace oldroyd;

namespace {

constexpr double kPi = std::numbers::pi_v<double>;
constexpr double kStep = 1e-4;

Vec2 fd_partial(const VectorField& f, double x, double y, bool in_x) {
  const double dx = in_x ? kStep : 0.0, dy = in_x ? 0.0 : kStep;
  const Vec2 hi = f(x + dx, y + dy), lo = f(x - dx, y - dy);
  return {(hi.x - lo.x) / (2.0 * kStep), (hi.y - lo.y) / (2.0 * kStep)};
}

SymMat2 fd_partial(const TensorField& f, double x, double y, bool in_x) {
  const double dx = in_x ? kStep : 0.0, dy = in_x ? 0.0 : kStep;
  return (f(x + dx, y + dy) - f(x - dx, y - dy)) * (1.0 / (2.0 * kStep));
}

Vec2 fd_laplacian(const VectorField& f, double x, double y) {
  const Vec2 c = f(x, y), e = f(x + kStep, y), w = f(x - kStep, y),
             n = f(x, y + kStep), s = f(x, y - kStep);
  const double h2 = kStep * kStep;
  return {(e.x + w.x + n.x + s.x - 4.0 * c.x) / h2,
          (e.y + w.y + n.y + s.y - 4.0 * c.y) / h2};
}

SymMat2 fd_laplacian(const TensorField& f, double x, double y) {
  const SymMat2 sum = f(x + kStep, y) + f(x - kStep, y) + f(x, y + kStep) +
                      f(x, y - kStep) - f(x, y) * 4.0;
  return sum * (1.0 / (kStep * kStep));
}

// Strong-form forcings reassembled from values alone.
Vec2 fd_momentum_forcing(const ManufacturedSolution& ms, const FluidParams& p,
                         double x, double y) {
  const Vec2 u = ms.velocity(x, y);
  const Vec2 ux = fd_partial(ms.velocity, x, y, true);
  const Vec2 uy = fd_partial(ms.velocity, x, y, false);
  const Vec2 lap = fd_laplacian(ms.velocity, x, y);
  const double gpx = (ms.pressure(x + kStep, y) - ms.pressure(x - kStep, y)) / (2.0 * kStep);
  const double gpy = (ms.pressure(x, y + kStep) - ms.pressure(x, y - kStep)) / (2.0 * kStep);
  const SymMat2 sx = fd_partial(ms.stress, x, y, true);
  const SymMat2 sy = fd_partial(ms.stress, x, y, false);
  return {p.re * (u.x * ux.x + u.y * uy.x) - (1.0 - p.r) * lap.x + gpx -
              (sx.s11 + sy.s12),
          p.re * (u.x * ux.y + u.y * uy.y) - (1.0 - p.r) * lap.y + gpy -
              (sx.s12 + sy.s22)};
}

SymMat2 fd_stress_forcing(const ManufacturedSolution& ms, const FluidParams& p,
                          double x, double y) {
  const Vec2 u = ms.velocity(x, y);
  const Vec2 ux = fd_partial(ms.velocity, x, y, true);
  const Vec2 uy = fd_partial(ms.velocity, x, y, false);
  const Mat2 g{ux.x, uy.x, ux.y, uy.y};
  const SymMat2 s = ms.stress(x, y);
  const SymMat2 adv = fd_partial(ms.stress, x, y, true) * u.x +
                      fd_partial(ms.stress, x, y, false) * u.y;
  const auto [d, w] = sym_skew_parts(g);
  return (adv + convected_coupling(g, s, p.a)) * p.we + s -
         fd_laplacian(ms.stress, x, y) * p.diff - d * (2.0 * p.r);
}

// Trigonometric velocity whose strain tensor is a Laplacian eigenfield, so
// the stress field k * D(u) with k = 2r / (1 + 2 pi^2 diff) satisfies the
// diffusive constitutive relation exactly at we = 0.
ManufacturedSolution consistent_pair(double r, double diff) {
  const double k = 2.0 * r / (1.0 + 2.0 * kPi * kPi * diff);
  ManufacturedSolution ms;
  ms.velocity = [](double x, double y) {
    return Vec2{std::sin(kPi * x) * std::cos(kPi * y),
                -std::cos(kPi * x) * std::sin(kPi * y)};
  };
  ms.velocity_grad = [](double x, double y) {
    const double cc = std::cos(kPi * x) * std::cos(kPi * y);
    const double ss = std::sin(kPi * x) * std::sin(kPi * y);
    return Mat2{kPi * cc, -kPi * ss, kPi * ss, -kPi * cc};
  };
  ms.velocity_laplacian = [ms](double x, double y) {
    const Vec2 u = ms.velocity(x, y);
    return Vec2{-2.0 * kPi * kPi * u.x, -2.0 * kPi * kPi * u.y};
  };
  ms.pressure = [](double, double) { return 0.0; };
  ms.pressure_grad = [](double, double) { return Vec2{0.0, 0.0}; };
  ms.stress = [k](double x, double y) {
    const double cc = std::cos(kPi * x) * std::cos(kPi * y);
    return SymMat2{k * kPi * cc, 0.0, -k * kPi * cc};
  };
  ms.stress_dx = [k](double x, double y) {
    const double sc = std::sin(kPi * x) * std::cos(kPi * y);
    return SymMat2{-k * kPi * kPi * sc, 0.0, k * kPi * kPi * sc};
  };
  ms.stress_dy = [k](double x, double y) {
    const double cs = std::cos(kPi * x) * std::sin(kPi * y);
    return SymMat2{-k * kPi * kPi * cs, 0.0, k * kPi * kPi * cs};
  };
  ms.stress_laplacian = [ms](double x, double y) {
    return ms.stress(x, y) * (-2.0 * kPi * kPi);
  };
  return ms;
}

// Triple lying exactly in the FE spaces: resting fluid, linear pressure,
// constant stress.
ManufacturedSolution exact_triple() {
  ManufacturedSolution ms;
  ms.velocity = [](double, double) { return Vec2{0.0, 0.0}; };
  ms.velocity_grad = [](double, double) { return Mat2{}; };
  ms.velocity_laplacian = [](double, double) { return Vec2{0.0, 0.0}; };
  ms.pressure = [](double x, double) { return x - 0.5; };
  ms.pressure_grad = [](double, double) { return Vec2{1.0, 0.0}; };
  ms.stress = [](double, double) { return SymMat2{0.3, -0.1, 0.2}; };
  ms.stress_dx = [](double, double) { return SymMat2{}; };
  ms.stress_dy = [](double, double) { return SymMat2{}; };
  ms.stress_laplacian = [](double, double) { return SymMat2{}; };
  return ms;
}

}  // namespace

TEST_CASE("benchmark triple: divergence, boundary, mean, and flux structure") {
  const ManufacturedSolution ms = default_benchmark();
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  for (int k = 0; k < 50; ++k) {
    const double x = unif(rng), y = unif(rng);
    const Mat2 g = ms.velocity_grad(x, y);
    CHECK(g.a11 + g.a22 == 0.0);  // divergence vanishes exactly, not just small
  }
  for (int k = 0; k < 20; ++k) {
    const double t = unif(rng);
    for (const auto& [x, y] : {std::pair{t, 0.0}, {t, 1.0}, {0.0, t}, {1.0, t}}) {
      const Vec2 u = ms.velocity(x, y);
      CHECK(u.x == 0.0);
      CHECK(u.y == 0.0);
      // Natural flux condition: the normal derivative of every stress entry
      // vanishes on the boundary (up to sin(k pi) roundoff).
      const SymMat2 dn = (x == 0.0 || x == 1.0) ? ms.stress_dx(x, y) : ms.stress_dy(x, y);
      CHECK(std::abs(dn.s11) <= 1e-14);
      CHECK(std::abs(dn.s12) <= 1e-14);
      CHECK(std::abs(dn.s22) <= 1e-14);
    }
  }

  FunctionSpaces sp(unit_square_mesh(8));
  const State xi = interpolate(sp, ms);
  const Eigen::VectorXd& m = sp.pressure_integral();
  CHECK(std::abs(m.dot(xi.pressure)) <= 1e-15 * xi.pressure.cwiseAbs().maxCoeff());
  // Interpolation puts the closed-form values at the dof points.
  const int n = sp.scalar_dim();
  for (int i : {0, n / 2, n - 1}) {
    const Vec2 pt = sp.dof_points()[i];
    CHECK(xi.velocity[i] == ms.velocity(pt.x, pt.y).x);
    CHECK(xi.stress[n + i] == ms.stress(pt.x, pt.y).s12);
  }
}

TEST_CASE("substituted forcings match a finite-difference rebuild") {
  const ManufacturedSolution ms = default_benchmark();
  const FluidParams p = make_params(1.0, 0.05, 0.5, 1.0, 1.0);
  const MmsForcing forc = mms_forcing(ms, p);

  std::mt19937 rng(77);
  std::uniform_real_distribution<double> unif(0.05, 0.95);
  for (int k = 0; k < 50; ++k) {
    const double x = unif(rng), y = unif(rng);
    const Vec2 f = forc.momentum.field(x, y);
    const Vec2 f_fd = fd_momentum_forcing(ms, p, x, y);
    CHECK(std::abs(f.x - f_fd.x) <= 1e-5 * (1.0 + std::abs(f.x)));
    CHECK(std::abs(f.y - f_fd.y) <= 1e-5 * (1.0 + std::abs(f.y)));

    const SymMat2 g = forc.stress(x, y);
    const SymMat2 g_fd = fd_stress_forcing(ms, p, x, y);
    CHECK(std::abs(g.s11 - g_fd.s11) <= 1e-5 * (1.0 + std::abs(g.s11)));
    CHECK(std::abs(g.s12 - g_fd.s12) <= 1e-5 * (1.0 + std::abs(g.s12)));
    CHECK(std::abs(g.s22 - g_fd.s22) <= 1e-5 * (1.0 + std::abs(g.s22)));
  }
}

TEST_CASE("forcing special cases: trivial triple and linear-terms-only") {
  SUBCASE("all-zero triple produces exactly zero forcings") {
    ManufacturedSolution zero = exact_triple();
    zero.pressure = [](double, double) { return 0.0; };
    zero.pressure_grad = [](double, double) { return Vec2{0.0, 0.0}; };
    zero.stress = [](double, double) { return SymMat2{}; };
    const MmsForcing forc = mms_forcing(zero, make_params(1.0, 0.5, 0.5, 1.0, 1.0));
    const Vec2 f = forc.momentum.field(0.3, 0.7);
    const SymMat2 g = forc.stress(0.3, 0.7);
    CHECK(f.x == 0.0);
    CHECK(f.y == 0.0);
    CHECK(g.s11 == 0.0);
    CHECK(g.s12 == 0.0);
    CHECK(g.s22 == 0.0);
  }

  SUBCASE("inertialess inelastic case keeps only the linear terms") {
    ManufacturedSolution ms = default_benchmark();
    ms.stress = [](double, double) { return SymMat2{}; };
    ms.stress_dx = [](double, double) { return SymMat2{}; };
    ms.stress_dy = [](double, double) { return SymMat2{}; };
    ms.stress_laplacian = [](double, double) { return SymMat2{}; };
    const FluidParams p = make_params(0.0, 0.0, 0.3, 0.6, 0.7);
    const MmsForcing forc = mms_forcing(ms, p);
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int k = 0; k < 20; ++k) {
      const double x = unif(rng), y = unif(rng);
      const Vec2 lap = ms.velocity_laplacian(x, y);
      const Vec2 gp = ms.pressure_grad(x, y);
      const Vec2 f = forc.momentum.field(x, y);
      CHECK(f.x == doctest::Approx(-(1.0 - p.r) * lap.x + gp.x).epsilon(1e-14));
      CHECK(f.y == doctest::Approx(-(1.0 - p.r) * lap.y + gp.y).epsilon(1e-14));
      const auto [d, w] = sym_skew_parts(ms.velocity_grad(x, y));
      const SymMat2 g = forc.stress(x, y);
      CHECK(g.s11 == doctest::Approx(-2.0 * p.r * d.s11).epsilon(1e-14));
      CHECK(g.s12 == doctest::Approx(-2.0 * p.r * d.s12).epsilon(1e-14));
      CHECK(g.s22 == doctest::Approx(-2.0 * p.r * d.s22).epsilon(1e-14));
    }
  }
}

TEST_CASE("doubling the stress field shifts f by exactly its divergence") {
  const FluidParams p = make_params(1.0, 0.05, 0.5, 1.0, 1.0);
  const ManufacturedSolution base = default_benchmark(1.0, 0.1, 0.1);
  const ManufacturedSolution doubled = default_benchmark(1.0, 0.2, 0.1);
  const MmsForcing f1 = mms_forcing(base, p);
  const MmsForcing f2 = mms_forcing(doubled, p);

  std::mt19937 rng(8);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int k = 0; k < 30; ++k) {
    const double x = unif(rng), y = unif(rng);
    const SymMat2 sx = base.stress_dx(x, y), sy = base.stress_dy(x, y);
    const Vec2 div_s{sx.s11 + sy.s12, sx.s12 + sy.s22};
    const Vec2 a = f1.momentum.field(x, y), b = f2.momentum.field(x, y);
    const double scale = 1.0 + std::abs(a.x) + std::abs(a.y);
    CHECK(std::abs((b.x - a.x) + div_s.x) <= 1e-14 * scale);
    CHECK(std::abs((b.y - a.y) + div_s.y) <= 1e-14 * scale);
  }
}

TEST_CASE("a constitutive-consistent pair needs no stress source") {
  const double r = 0.4, diff = 0.25;
  const ManufacturedSolution ms = consistent_pair(r, diff);
  const FluidParams p = make_params(0.8, 0.0, r, 0.6, diff);
  const MmsForcing forc = mms_forcing(ms, p);
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int k = 0; k < 50; ++k) {
    const double x = unif(rng), y = unif(rng);
    const SymMat2 g = forc.stress(x, y);
    const auto [d, w] = sym_skew_parts(ms.velocity_grad(x, y));
    const double scale = 1.0 + 2.0 * r * d.frobenius();
    CHECK(std::abs(g.s11) <= 1e-13 * scale);
    CHECK(std::abs(g.s12) <= 1e-13 * scale);
    CHECK(std::abs(g.s22) <= 1e-13 * scale);
  }
}

TEST_CASE("interpolant of the triple has exactly zero discrete error") {
  FunctionSpaces sp(unit_square_mesh(4));
  const ManufacturedSolution ms = default_benchmark();
  const State xi = interpolate(sp, ms);
  const ErrorNorms err = error_norms(sp, xi, ms);
  CHECK(err.velocity_h1 == 0.0);
  CHECK(err.pressure_l2 == 0.0);
  CHECK(err.stress_w == 0.0);
}

TEST_CASE("a triple inside the FE spaces saturates at roundoff") {
  const ManufacturedSolution ms = exact_triple();
  const FluidParams p = make_params(1.0, 0.05, 0.5, 1.0, 1.0);
  const ConvergenceStudy st = convergence_study(ms, p, 3, 4);
  REQUIRE(st.levels.size() == 3);
  for (const ConvergenceLevel& lv : st.levels) {
    CHECK(lv.report.converged());
    CHECK(lv.errors.velocity_h1 <= 1e-10);
    CHECK(lv.errors.pressure_l2 <= 1e-10);
    CHECK(lv.errors.stress_w <= 1e-10);
  }
  CHECK(st.saturated);
}

TEST_CASE("nonlinear benchmark converges at second order or better") {
  const ManufacturedSolution ms = default_benchmark();
  const FluidParams p = make_params(1.0, 0.05, 0.5, 1.0, 1.0);
  const ConvergenceStudy st = convergence_study(ms, p, 3, 8);
  REQUIRE(st.levels.size() == 3);
  REQUIRE(st.velocity_order.size() == 2);
  CHECK_FALSE(st.saturated);
  for (std::size_t i = 0; i < st.levels.size(); ++i) {
    CHECK(st.levels[i].report.converged());
    CHECK(st.levels[i].report.iterations > 2);  // genuinely coupled problem
    if (i > 0) {
      CHECK(st.levels[i].errors.velocity_h1 < st.levels[i - 1].errors.velocity_h1);
      CHECK(st.levels[i].errors.pressure_l2 < st.levels[i - 1].errors.pressure_l2);
      CHECK(st.levels[i].errors.stress_w < st.levels[i - 1].errors.stress_w);
    }
  }
  for (double o : st.velocity_order) CHECK(o >= 1.8);
  for (double o : st.pressure_order) CHECK(o >= 1.8);
  for (double o : st.stress_order) CHECK(o >= 1.8);

  CHECK_THROWS_AS((void)convergence_study(ms, p, 1, 8), std::invalid_argument);
}
