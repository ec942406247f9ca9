// Fixed-point solver: trivial data, determinism, fixed-point property,
// relaxation selection, and warm starts.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oldroyd/norms.hpp"
#include "oldroyd/solver.hpp"

using namespace oldroyd;

namespace {

FluidParams make(double re, double we, double r, double a, double diff) {
  FluidParams p;
  p.re = re;
  p.we = we;
  p.r = r;
  p.a = a;
  p.diff = diff;
  p.validate();
  return p;
}

// A rotational body force (nonzero curl): constant forcings are pressure
// gradients and would make every solve trivially zero.
Forcing vortex_forcing(double s = 0.3) {
  Forcing f;
  f.field = [s](double x, double y) { return Vec2{s * (y - 0.5), s * (0.5 - x)}; };
  f.description = "rotational body force";
  return f;
}

}  // namespace

TEST_CASE("zero data converges immediately to the zero state") {
  FunctionSpaces sp(unit_square_mesh(4));
  const auto p = make(1.0, 0.05, 0.5, 1.0, 1.0);
  Forcing none;
  State xi = sp.zero_state();
  const SolveReport rep = solve_picard(sp, p, none, SolverOptions{}, xi);
  CHECK(rep.converged());
  CHECK(rep.iterations == 1);
  CHECK(xi.velocity.norm() == 0.0);
  CHECK(xi.pressure.norm() == 0.0);
  CHECK(xi.stress.norm() == 0.0);
}

TEST_CASE("identical runs are bitwise identical") {
  FunctionSpaces sp(unit_square_mesh(4));
  const auto p = make(1.0, 0.05, 0.5, -1.0, 1.0);
  const Forcing f = vortex_forcing();
  State a = sp.zero_state(), b = sp.zero_state();
  const SolveReport ra = solve_picard(sp, p, f, SolverOptions{}, a);
  const SolveReport rb = solve_picard(sp, p, f, SolverOptions{}, b);
  CHECK(ra.converged());
  CHECK(ra.iterations == rb.iterations);
  CHECK((a.velocity - b.velocity).norm() == 0.0);
  CHECK((a.pressure - b.pressure).norm() == 0.0);
  CHECK((a.stress - b.stress).norm() == 0.0);
}

TEST_CASE("converged iterates satisfy the coupled weak system") {
  FunctionSpaces sp(unit_square_mesh(8));
  const Forcing f = vortex_forcing();
  SolverOptions opts;
  opts.tol = 1e-11;

  for (const auto& p : {make(0.0, 0.05, 0.5, 1.0, 1.0), make(1.0, 0.05, 0.5, 1.0, 0.1),
                        make(1.0, 0.0, 0.5, 0.0, 1.0)}) {
    State xi = sp.zero_state();
    const SolveReport rep = solve_picard(sp, p, f, opts, xi);
    REQUIRE(rep.converged());
    // The independent residual evaluation agrees with the solver's verdict.
    const ResidualNorms rn = weak_residual(sp, p, f, xi);
    CHECK(rn.total() <= opts.tol * 1.01);
    // Velocity is weakly divergence free and the pressure mean is pinned.
    const auto stokes = assemble_stokes_blocks(sp, p);
    CHECK((stokes.divergence * xi.velocity).norm() < 1e-11);
    CHECK(std::abs(sp.pressure_integral().dot(xi.pressure)) < 1e-11);
    CHECK(std::abs(rep.momentum_residual - rn.momentum) < 1e-13);
    CHECK(std::abs(rep.stress_residual - rn.stress) < 1e-13);
  }
}

TEST_CASE("purely viscous coupling still needs a short sweep cascade") {
  // With both nonlinearities off the two equations remain coupled through
  // the stress divergence, so the alternating sweep converges geometrically
  // rather than in a fixed number of steps.
  FunctionSpaces sp(unit_square_mesh(6));
  const Forcing f = vortex_forcing();
  SolverOptions opts;
  opts.tol = 1e-10;

  State xi = sp.zero_state();
  const SolveReport strong = solve_picard(sp, make(0, 0, 0.5, 0, 1.0), f, opts, xi);
  CHECK(strong.converged());
  CHECK(strong.iterations > 2);   // genuinely iterative even in the linear case
  CHECK(strong.iterations <= 30); // but with a healthy contraction rate

  State xi2 = sp.zero_state();
  const SolveReport weak_diff = solve_picard(sp, make(0, 0, 0.5, 0, 0.01), f, opts, xi2);
  CHECK(weak_diff.converged());
  // Weaker stress diffusion couples the sweeps harder and slows them down.
  CHECK(weak_diff.iterations > strong.iterations);

  // Residual history is monotone decreasing for this linear problem.
  for (size_t i = 1; i < strong.history.size(); ++i) {
    const double prev = std::hypot(strong.history[i - 1].momentum_residual,
                                   strong.history[i - 1].stress_residual);
    const double cur = std::hypot(strong.history[i].momentum_residual,
                                  strong.history[i].stress_residual);
    CHECK(cur <= prev * (1 + 1e-9));
  }
  CHECK(static_cast<int>(strong.history.size()) == strong.iterations);
}

TEST_CASE("relaxation selection and override") {
  FunctionSpaces sp(unit_square_mesh(3));
  const auto p = make(1.0, 0.05, 0.5, 1.0, 1.0);
  const Forcing f = vortex_forcing();

  SolverOptions opts;
  opts.smallness_hint = 0.3;
  State xi = sp.zero_state();
  CHECK(solve_picard(sp, p, f, opts, xi).relaxation_used == 1.0);

  opts.smallness_hint = 0.8;
  State xi2 = sp.zero_state();
  CHECK(solve_picard(sp, p, f, opts, xi2).relaxation_used == 0.5);

  opts.relaxation = 0.7;
  State xi3 = sp.zero_state();
  const SolveReport rep = solve_picard(sp, p, f, opts, xi3);
  CHECK(rep.relaxation_used == 0.7);
  CHECK(rep.converged());
  // All variants land on the same solution.
  CHECK((xi3.velocity - xi.velocity).norm() < 1e-9);
  CHECK((xi3.stress - xi.stress).norm() < 1e-9);
}

TEST_CASE("warm starts reach the same small-data solution") {
  FunctionSpaces sp(unit_square_mesh(4));
  const auto p = make(1.0, 0.05, 0.5, 1.0, 1.0);
  const Forcing f = vortex_forcing();
  SolverOptions opts;
  opts.tol = 1e-11;

  State cold = sp.zero_state();
  REQUIRE(solve_picard(sp, p, f, opts, cold).converged());

  SolverOptions warm_opts = opts;
  warm_opts.use_initial = true;
  State warm = random_state(sp, 99);
  rescale_state(sp, p, warm, 0.5);
  REQUIRE(solve_picard(sp, p, f, warm_opts, warm).converged());

  CHECK((warm.velocity - cold.velocity).norm() < 1e-9);
  CHECK((warm.stress - cold.stress).norm() < 1e-9);
}

TEST_CASE("iteration cap is reported honestly") {
  FunctionSpaces sp(unit_square_mesh(3));
  const auto p = make(1.0, 0.05, 0.5, 1.0, 1.0);
  const Forcing f = vortex_forcing();
  SolverOptions opts;
  opts.max_iter = 2;
  opts.tol = 1e-14;
  State xi = sp.zero_state();
  const SolveReport rep = solve_picard(sp, p, f, opts, xi);
  CHECK(rep.status == SolveStatus::max_iter_exceeded);
  CHECK(rep.iterations == 2);
  CHECK(!rep.converged());
  CHECK(std::string(to_string(rep.status)) == "max_iter_exceeded");
}

TEST_CASE("pressure mean fix is an exact projection") {
  FunctionSpaces sp(unit_square_mesh(4));
  const auto p = make(0.0, 0.05, 0.5, 1.0, 1.0);
  State xi = sp.zero_state();
  REQUIRE(solve_picard(sp, p, vortex_forcing(), SolverOptions{}, xi).converged());

  State shifted = xi;
  shifted.pressure.array() += 3.7;
  fix_pressure_mean(sp, shifted);
  CHECK(std::abs(sp.pressure_integral().dot(shifted.pressure)) < 1e-12);
  CHECK((shifted.pressure - xi.pressure).norm() < 1e-10 * (1 + xi.pressure.norm()));
}
