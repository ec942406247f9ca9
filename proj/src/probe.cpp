#include "oldroyd/probe.hpp"

#include <algorithm>
#include <cstdlib>
#include <future>
#include <stdexcept>
#include <thread>
#include <utility>

#include "oldroyd/galerkin.hpp"
#include "oldroyd/norms.hpp"

namespace oldroyd {

namespace {

int thread_cap(int n_tasks) {
  if (const char* env = std::getenv("OLDROYD_NUM_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return std::max(1, std::min(n_tasks, hw == 0 ? 1 : static_cast<int>(hw)));
}

}  // namespace

ProbeReport multistart_uniqueness_probe(const FunctionSpaces& sp, const FluidParams& p,
                                        const Forcing& f, const ProbeOptions& opts) {
  if (opts.n_starts < 2)
    throw std::invalid_argument("multistart_uniqueness_probe: need at least 2 starts");
  const double radius = opts.ball_radius > 0.0 ? opts.ball_radius : 1.0;

  struct Outcome {
    State state;
    SolveReport report;
    double initial_norm = 0.0;
  };
  auto run_one = [&](int k) {
    State xi = random_state(sp, opts.seed + static_cast<unsigned>(k));
    // Distinct deterministic radii keep the starts genuinely spread out.
    const double frac = (k + 1.0) / (opts.n_starts + 1.0);
    rescale_state(sp, p, xi, radius * frac);
    Outcome out;
    out.initial_norm = norm_X(sp, p, xi);
    SolverOptions sopts = opts.solver;
    sopts.use_initial = true;
    if (sopts.smallness_hint == 0.0) sopts.smallness_hint = radius;
    out.report = solve_picard(sp, p, f, sopts, xi);
    fix_pressure_mean(sp, xi);
    out.state = std::move(xi);
    return out;
  };

  std::vector<Outcome> outcomes(opts.n_starts);
  const int cap = thread_cap(opts.n_starts);
  for (int base = 0; base < opts.n_starts; base += cap) {
    const int end = std::min(opts.n_starts, base + cap);
    std::vector<std::future<Outcome>> wave;
    for (int k = base; k < end; ++k)
      wave.push_back(std::async(std::launch::async, run_one, k));
    for (int k = base; k < end; ++k) outcomes[k] = wave[k - base].get();
  }

  ProbeReport rep;
  rep.starts.resize(opts.n_starts);
  for (int k = 0; k < opts.n_starts; ++k) {
    ProbeStart& st = rep.starts[k];
    st.converged = outcomes[k].report.converged();
    st.iterations = outcomes[k].report.iterations;
    st.initial_norm_x = outcomes[k].initial_norm;
    if (st.converged) {
      st.state_norm_x = norm_X(sp, p, outcomes[k].state);
      ++rep.n_converged;
      if (st.state_norm_x > radius * (1.0 + 1e-6)) rep.escaped_ball = true;
    } else {
      rep.any_failed = true;
    }
  }

  for (int i = 0; i < opts.n_starts; ++i) {
    if (!rep.starts[i].converged) continue;
    for (int j = i + 1; j < opts.n_starts; ++j) {
      if (!rep.starts[j].converged) continue;
      State diff;
      diff.velocity = outcomes[i].state.velocity - outcomes[j].state.velocity;
      diff.pressure = outcomes[i].state.pressure - outcomes[j].state.pressure;
      diff.stress = outcomes[i].state.stress - outcomes[j].state.stress;
      rep.max_pairwise_distance =
          std::max(rep.max_pairwise_distance, norm_X(sp, p, diff));
    }
  }
  return rep;
}

}  // namespace oldroyd
