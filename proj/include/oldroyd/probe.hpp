#pragma once

// Multi-start uniqueness probe: run the fixed-point solver from several
// random initial states inside a given ball and measure how far apart the
// converged solutions land.  When the uniqueness coefficients are positive
// the converged states must coincide up to iteration error; when they are
// not, the distances are reported without any claim (the condition is
// sufficient, not necessary).

#include <vector>

#include "oldroyd/forcing.hpp"
#include "oldroyd/params.hpp"
#include "oldroyd/solver.hpp"
#include "oldroyd/spaces.hpp"

namespace oldroyd {

struct ProbeOptions {
  int n_starts = 5;
  unsigned seed = 2027;
  // Radius of the ball the starts are scattered in (typically the certified
  // energy radius); nonpositive falls back to 1.
  double ball_radius = 0.0;
  SolverOptions solver;
};

struct ProbeStart {
  bool converged = false;
  int iterations = 0;
  double initial_norm_x = 0.0;
  double state_norm_x = 0.0;  // of the converged state (0 if not converged)
};

struct ProbeReport {
  std::vector<ProbeStart> starts;
  int n_converged = 0;
  bool any_failed = false;  // non-converged starts are excluded but flagged
  // Largest X-distance between two converged solutions (0 with fewer than 2).
  double max_pairwise_distance = 0.0;
  // A converged state left the sampling ball (monitored, never asserted).
  bool escaped_ball = false;
};

// Starts are deterministic in (seed, index) and spread over distinct radii
// inside the ball; tasks run concurrently (OLDROYD_NUM_THREADS caps the
// thread count) with results gathered in index order, so the report does not
// depend on the schedule.
ProbeReport multistart_uniqueness_probe(const FunctionSpaces& sp, const FluidParams& p,
                                        const Forcing& f, const ProbeOptions& opts);

}  // namespace oldroyd
