#include "oldroyd/mms.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "oldroyd/mesh.hpp"
#include "oldroyd/norms.hpp"

namespace oldroyd {

namespace {

constexpr double kPi = 3.14159265358979323846;

// The bump t^2 (1-t)^2 with its first three derivatives.
struct Bump {
  double v, d1, d2, d3;
};

Bump bump(double t) {
  Bump b;
  const double t2 = t * t;
  b.v = t2 * (1.0 - t) * (1.0 - t);
  b.d1 = 2.0 * t - 6.0 * t2 + 4.0 * t2 * t;
  b.d2 = 2.0 - 12.0 * t + 12.0 * t2;
  b.d3 = -12.0 + 24.0 * t;
  return b;
}

}  // namespace

ManufacturedSolution default_benchmark(double u0, double s0, double p0) {
  ManufacturedSolution ms;

  // Stream function psi = u0 X(x) Y(y), velocity = (psi_y, -psi_x).
  ms.velocity = [u0](double x, double y) {
    const Bump bx = bump(x), by = bump(y);
    return Vec2{u0 * bx.v * by.d1, -u0 * bx.d1 * by.v};
  };
  ms.velocity_grad = [u0](double x, double y) {
    const Bump bx = bump(x), by = bump(y);
    Mat2 g;
    const double diag = u0 * bx.d1 * by.d1;
    g.a11 = diag;                 // d u1 / dx
    g.a12 = u0 * bx.v * by.d2;    // d u1 / dy
    g.a21 = -u0 * bx.d2 * by.v;   // d u2 / dx
    g.a22 = -diag;                // exact pointwise divergence zero
    return g;
  };
  ms.velocity_laplacian = [u0](double x, double y) {
    const Bump bx = bump(x), by = bump(y);
    return Vec2{u0 * (bx.d2 * by.d1 + bx.v * by.d3),
                -u0 * (bx.d3 * by.v + bx.d1 * by.d2)};
  };

  ms.pressure = [p0](double x, double y) {
    return p0 * std::sin(kPi * x) * std::cos(kPi * y);
  };
  ms.pressure_grad = [p0](double x, double y) {
    return Vec2{p0 * kPi * std::cos(kPi * x) * std::cos(kPi * y),
                -p0 * kPi * std::sin(kPi * x) * std::sin(kPi * y)};
  };

  // One cosine-product shape per stress entry; every normal derivative
  // carries a factor sin(k pi t) vanishing on the boundary.
  ms.stress = [s0](double x, double y) {
    return SymMat2{s0 * std::cos(kPi * x) * std::cos(kPi * y),
                   s0 * std::cos(2.0 * kPi * x) * std::cos(kPi * y),
                   s0 * std::cos(kPi * x) * std::cos(2.0 * kPi * y)};
  };
  ms.stress_dx = [s0](double x, double y) {
    return SymMat2{-s0 * kPi * std::sin(kPi * x) * std::cos(kPi * y),
                   -s0 * 2.0 * kPi * std::sin(2.0 * kPi * x) * std::cos(kPi * y),
                   -s0 * kPi * std::sin(kPi * x) * std::cos(2.0 * kPi * y)};
  };
  ms.stress_dy = [s0](double x, double y) {
    return SymMat2{-s0 * kPi * std::cos(kPi * x) * std::sin(kPi * y),
                   -s0 * kPi * std::cos(2.0 * kPi * x) * std::sin(kPi * y),
                   -s0 * 2.0 * kPi * std::cos(kPi * x) * std::sin(2.0 * kPi * y)};
  };
  ms.stress_laplacian = [s0](double x, double y) {
    const double pp = kPi * kPi;
    return SymMat2{-2.0 * pp * s0 * std::cos(kPi * x) * std::cos(kPi * y),
                   -5.0 * pp * s0 * std::cos(2.0 * kPi * x) * std::cos(kPi * y),
                   -5.0 * pp * s0 * std::cos(kPi * x) * std::cos(2.0 * kPi * y)};
  };
  return ms;
}

MmsForcing mms_forcing(const ManufacturedSolution& ms, const FluidParams& p) {
  MmsForcing out;
  out.momentum.field = [ms, p](double x, double y) {
    const Vec2 u = ms.velocity(x, y);
    const Mat2 g = ms.velocity_grad(x, y);
    const Vec2 lap = ms.velocity_laplacian(x, y);
    const Vec2 gp = ms.pressure_grad(x, y);
    const SymMat2 sx = ms.stress_dx(x, y), sy = ms.stress_dy(x, y);
    return Vec2{p.re * (u.x * g.a11 + u.y * g.a12) - (1.0 - p.r) * lap.x + gp.x -
                    (sx.s11 + sy.s12),
                p.re * (u.x * g.a21 + u.y * g.a22) - (1.0 - p.r) * lap.y + gp.y -
                    (sx.s12 + sy.s22)};
  };
  out.momentum.description = "manufactured";
  out.stress = [ms, p](double x, double y) {
    const Vec2 u = ms.velocity(x, y);
    const Mat2 g = ms.velocity_grad(x, y);
    const SymMat2 s = ms.stress(x, y);
    const SymMat2 adv = ms.stress_dx(x, y) * u.x + ms.stress_dy(x, y) * u.y;
    const auto [d, w] = sym_skew_parts(g);
    return (adv + convected_coupling(g, s, p.a)) * p.we + s -
           ms.stress_laplacian(x, y) * p.diff - d * (2.0 * p.r);
  };
  return out;
}

State interpolate(const FunctionSpaces& sp, const ManufacturedSolution& ms) {
  State xi = sp.zero_state();
  const auto& pts = sp.dof_points();
  const int n = sp.scalar_dim();
  for (int i = 0; i < n; ++i) {
    const Vec2 u = ms.velocity(pts[i].x, pts[i].y);
    xi.velocity[i] = u.x;
    xi.velocity[n + i] = u.y;
    const SymMat2 s = ms.stress(pts[i].x, pts[i].y);
    xi.stress[i] = s.s11;
    xi.stress[n + i] = s.s12;
    xi.stress[2 * n + i] = s.s22;
  }
  // Vertices lead the dof numbering, so they serve the P1 pressure directly.
  for (int v = 0; v < sp.pressure_dim(); ++v)
    xi.pressure[v] = ms.pressure(pts[v].x, pts[v].y);
  fix_pressure_mean(sp, xi);
  return xi;
}

ErrorNorms error_norms(const FunctionSpaces& sp, const State& state,
                       const ManufacturedSolution& ms) {
  const State ref = interpolate(sp, ms);
  ErrorNorms out;
  out.velocity_h1 = norm_V(sp, state.velocity - ref.velocity);
  Eigen::VectorXd dp = state.pressure - ref.pressure;
  const Eigen::VectorXd& m = sp.pressure_integral();
  dp.array() -= m.dot(dp) / m.sum();
  out.pressure_l2 = norm_L2_pressure(sp, dp);
  out.stress_w = norm_W(sp, state.stress - ref.stress);
  return out;
}

ConvergenceStudy convergence_study(const ManufacturedSolution& ms, const FluidParams& p,
                                   int levels, int base_n, const SolverOptions& sopts) {
  if (levels < 2)
    throw std::invalid_argument("convergence_study: need at least 2 levels");
  ConvergenceStudy study;
  const MmsForcing forc = mms_forcing(ms, p);
  int n = base_n;
  for (int l = 0; l < levels; ++l, n *= 2) {
    FunctionSpaces sp(unit_square_mesh(n));
    State xi = sp.zero_state();
    const SolveReport rep = solve_picard(sp, p, forc.momentum, sopts, xi, forc.stress);
    if (!rep.converged())
      throw std::runtime_error("convergence_study: solve failed at n=" +
                               std::to_string(n) + " (" + to_string(rep.status) + ")");
    fix_pressure_mean(sp, xi);
    study.levels.push_back({n, error_norms(sp, xi, ms), rep});
  }
  for (std::size_t i = 1; i < study.levels.size(); ++i) {
    const ErrorNorms& coarse = study.levels[i - 1].errors;
    const ErrorNorms& fine = study.levels[i].errors;
    study.velocity_order.push_back(std::log2(coarse.velocity_h1 / fine.velocity_h1));
    study.pressure_order.push_back(std::log2(coarse.pressure_l2 / fine.pressure_l2));
    study.stress_order.push_back(std::log2(coarse.stress_w / fine.stress_w));
  }
  const ErrorNorms& last = study.levels.back().errors;
  study.saturated = last.velocity_h1 < 1e-10 && last.pressure_l2 < 1e-10 &&
                    last.stress_w < 1e-10;
  return study;
}

}  // namespace oldroyd
