#include "oldroyd/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <utility>

#include "oldroyd/assembly.hpp"
#include "oldroyd/norms.hpp"
#include "oldroyd/quadrature.hpp"

namespace oldroyd {

namespace {

// Ascent direction for the constrained quartic maximization: the gradient of
// int c^4 against the P2 basis, b_i = int c(x)^3 phi_i(x) (up to the factor 4
// that normalization absorbs).  Each step solves (M + K) c_next = b and
// renormalizes; since the quartic is convex, the ratio ||c||_L4 / ||c||_H1 is
// nondecreasing along the iteration.
Eigen::VectorXd cubed_load(const FunctionSpaces& sp, const Eigen::VectorXd& c) {
  Eigen::VectorXd b = Eigen::VectorXd::Zero(sp.scalar_dim());
  const auto& rule = triangle_rule();
  for (int t = 0; t < sp.mesh().n_triangles(); ++t) {
    const auto& g = sp.geometry(t);
    const auto& dofs = sp.cell_dofs(t);
    for (const auto& qp : rule) {
      double val[6];
      p2_values(qp.l1, qp.l2, val);
      double v = 0.0;
      for (int i = 0; i < 6; ++i) v += c[dofs[i]] * val[i];
      const double w = qp.w * g.det_j * v * v * v;
      for (int i = 0; i < 6; ++i) b[dofs[i]] += w * val[i];
    }
  }
  return b;
}

struct AscentOutcome {
  bool stabilized = false;
  double ratio = 0.0;
  int iterations = 0;
  Eigen::VectorXd field;
};

AscentOutcome ascend(const FunctionSpaces& sp, const COmegaOptions& opts,
                     Eigen::VectorXd c) {
  AscentOutcome out;
  const double n0 = norm_H1_scalar(sp, c);
  if (!(n0 > 0.0)) return out;  // degenerate start, report as unstabilized
  c /= n0;
  double prev = norm_L4_scalar(sp, c);
  for (int it = 1; it <= opts.max_iter; ++it) {
    Eigen::VectorXd next = sp.h1_factor().solve(cubed_load(sp, c));
    const double nn = norm_H1_scalar(sp, next);
    if (!(nn > 0.0)) return out;
    next /= nn;
    const double ratio = norm_L4_scalar(sp, next);
    c = std::move(next);
    if (std::abs(ratio - prev) <= opts.tol * std::max(1.0, ratio)) {
      out.stabilized = true;
      out.ratio = ratio;
      out.iterations = it;
      out.field = std::move(c);
      return out;
    }
    prev = ratio;
  }
  return out;
}

}  // namespace

COmegaEstimate estimate_c_omega(const FunctionSpaces& sp, const COmegaOptions& opts) {
  const int n = sp.scalar_dim();
  std::vector<Eigen::VectorXd> starts;
  starts.push_back(Eigen::VectorXd::Ones(n));  // exact fixed point with ratio 1
  std::mt19937 rng(opts.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int s = 0; s < opts.restarts; ++s) {
    Eigen::VectorXd c(n);
    for (int i = 0; i < n; ++i) c[i] = gauss(rng);
    starts.push_back(std::move(c));
  }
  for (const auto& extra : opts.extra_starts) starts.push_back(extra);

  COmegaEstimate est;
  bool any_stabilized = false;
  for (auto& start : starts) {
    AscentOutcome out = ascend(sp, opts, std::move(start));
    if (!out.stabilized) continue;
    any_stabilized = true;
    if (out.ratio > est.scalar_ratio) {
      est.scalar_ratio = out.ratio;
      est.iterations = out.iterations;
      est.maximizer = std::move(out.field);
    }
  }
  if (!any_stabilized)
    throw std::runtime_error(
        "estimate_c_omega: no ascent start stabilized within the iteration budget");
  est.value = est.scalar_ratio;

  // The scalar constant is applied to symmetric tensor fields through the
  // Frobenius norm; sample that transfer and raise the constant on any
  // observed violation.
  std::mt19937 audit_rng(opts.seed ^ 0x9e3779b9u);
  for (int k = 0; k < opts.audit_samples; ++k) {
    Eigen::VectorXd s(3 * n);
    for (int i = 0; i < 3 * n; ++i) s[i] = gauss(audit_rng);
    const double nw = norm_W(sp, s);
    if (!(nw > 0.0)) continue;
    est.audit_max_ratio = std::max(est.audit_max_ratio, norm_L4_stress(sp, s) / nw);
  }
  if (est.audit_max_ratio > est.value * (1.0 + 1e-13)) {
    est.value = est.audit_max_ratio;
    est.audited_raise = true;
  }
  return est;
}

double coupling_pairing(const FunctionSpaces& sp, double a,
                        const Eigen::VectorXd& velocity, const Eigen::VectorXd& stress) {
  FluidParams q;  // only we and a enter the coupling block; we = 1 strips the factor
  q.we = 1.0;
  q.a = a;
  const StressBlocks blocks = assemble_stress_blocks(sp, q, velocity);
  return stress.dot(blocks.coupling * stress);
}

const char* to_string(SolutionBranch b) {
  switch (b) {
    case SolutionBranch::small_root: return "small-root";
    case SolutionBranch::large_root: return "large-root";
    case SolutionBranch::degenerate: return "degenerate";
  }
  return "unknown";
}

Certificate energy_certificate(const FunctionSpaces& sp, const FluidParams& p,
                               double c_omega_h, double f_norm_h, const State& xi) {
  Certificate cert;
  cert.c_omega_h = c_omega_h;
  cert.f_norm_h = f_norm_h;
  cert.constants = build_constants(p, c_omega_h, f_norm_h);
  cert.state_norm_x = norm_X(sp, p, xi);
  cert.existence_ok = cert.constants.existence_ok;
  if (!cert.existence_ok) {
    cert.notes =
        "smallness number exceeds 1: the invariant-ball construction does not "
        "apply to these data, no bound is claimed";
    return cert;
  }

  const double c2 = cert.constants.radius.value;
  const double nx = cert.state_norm_x;
  cert.slack = nx * nx - c2 * c2;
  cert.bound_ok = cert.slack <= 1e-8;

  const EnergyCoeffs& ec = cert.constants.coeffs;
  if (nx <= c2 * (1.0 + 1e-10) + 1e-12) {
    cert.branch = SolutionBranch::small_root;
  } else if (ec.alpha > 0.0) {
    const double disc = ec.beta * ec.beta - 4.0 * ec.alpha * ec.gamma;
    const double large = (ec.beta + std::sqrt(std::max(disc, 0.0))) / (2.0 * ec.alpha);
    cert.branch = nx >= large * (1.0 - 1e-10) ? SolutionBranch::large_root
                                              : SolutionBranch::degenerate;
  } else {
    cert.branch = SolutionBranch::degenerate;  // linear branch has no second root
  }
  cert.uniqueness_ok = cert.constants.uniqueness.ok();

  switch (cert.constants.radius.branch) {
    case RadiusBranch::degenerate:
      cert.notes = "zero forcing: the certified ball degenerates to the origin";
      break;
    case RadiusBranch::corotational:
      cert.notes = "linear coercivity branch: radius = gamma / beta";
      break;
    case RadiusBranch::small_root:
      cert.notes = "quadratic branch: radius = smaller positive root";
      break;
  }
  if (cert.constants.uniqueness.re_zero_fallback)
    cert.notes += "; inertialess Young split used for the uniqueness coefficients";
  return cert;
}

SphereSignReport sphere_sign_test(const FunctionSpaces& sp, const FluidParams& p,
                                  const Forcing& f, const ConstantSet& constants,
                                  int n_samples, unsigned seed) {
  SphereSignReport rep;
  rep.n_samples = n_samples;
  rep.radius = constants.existence_ok ? constants.radius.value : 0.0;
  rep.epsilon = 1e-10 * (1.0 + rep.radius * rep.radius * rep.radius);

  const DivFreeProjector proj(sp);
  double min_pairing = std::numeric_limits<double>::infinity();
  for (int k = 0; k < n_samples; ++k) {
    State xi = random_state(sp, seed + static_cast<unsigned>(k));
    xi.velocity = proj.project(xi.velocity);
    rescale_state(sp, p, xi, rep.radius);
    // The loads suffice for the pairing; skip the Riesz solves.
    const PkApply pk = apply_pk(sp, p, f, xi);
    min_pairing = std::min(min_pairing, pk_pairing_functional(p, pk, xi));
  }
  rep.min_pairing = n_samples > 0 ? min_pairing : 0.0;
  rep.ok = rep.min_pairing >= -rep.epsilon;
  return rep;
}

UniquenessReport uniqueness_certificate(const FluidParams& p, double c_omega_h,
                                        double c2) {
  UniquenessReport rep;
  rep.coeffs = uniqueness_coefficients(p, c_omega_h, c2);
  rep.ok = rep.coeffs.ok();
  if (rep.ok) {
    if (c2 == 0.0) {
      rep.condition = "zero forcing: coefficients at their data-free values";
    } else if (rep.coeffs.re_zero_fallback) {
      rep.condition = "small forcing, inertialess split (re = 0 fallback)";
    } else {
      rep.condition = "small forcing at moderate inertia and elasticity";
    }
  } else {
    rep.condition = "not satisfied:";
    if (!(rep.coeffs.a_coef > 0.0)) rep.condition += " velocity coefficient <= 0";
    if (!(rep.coeffs.b_coef > 0.0)) rep.condition += " stress coefficient <= 0";
  }
  return rep;
}

}  // namespace oldroyd
