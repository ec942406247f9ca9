#include "oldroyd/norms.hpp"

#include <algorithm>
#include <cmath>

#include "oldroyd/assembly.hpp"
#include "oldroyd/quadrature.hpp"

namespace oldroyd {

namespace {

// Quadratic forms can round to small negatives on (near-)null vectors.
double sqrt_clamped(double v) { return std::sqrt(std::max(v, 0.0)); }

}  // namespace

double norm_V(const FunctionSpaces& sp, const Eigen::VectorXd& velocity) {
  const int n = sp.scalar_dim();
  const auto& k = sp.scalar_stiffness();
  const Eigen::VectorXd u1 = velocity.head(n), u2 = velocity.tail(n);
  return sqrt_clamped(u1.dot(k * u1) + u2.dot(k * u2));
}

double stress_l2_sq(const FunctionSpaces& sp, const Eigen::VectorXd& stress) {
  const int n = sp.scalar_dim();
  const auto& m = sp.scalar_mass();
  double acc = 0.0;
  for (int c = 0; c < 3; ++c) {
    const Eigen::VectorXd sc = stress.segment(c * n, n);
    acc += kStressWeight[c] * sc.dot(m * sc);
  }
  return acc;
}

double stress_h1_semi_sq(const FunctionSpaces& sp, const Eigen::VectorXd& stress) {
  const int n = sp.scalar_dim();
  const auto& k = sp.scalar_stiffness();
  double acc = 0.0;
  for (int c = 0; c < 3; ++c) {
    const Eigen::VectorXd sc = stress.segment(c * n, n);
    acc += kStressWeight[c] * sc.dot(k * sc);
  }
  return acc;
}

double norm_W(const FunctionSpaces& sp, const Eigen::VectorXd& stress) {
  return sqrt_clamped(stress_l2_sq(sp, stress) + stress_h1_semi_sq(sp, stress));
}

double norm_X(const FunctionSpaces& sp, const FluidParams& p, const State& xi) {
  const double nv = norm_V(sp, xi.velocity);
  const double nw = norm_W(sp, xi.stress);
  return sqrt_clamped(2.0 * p.r * nv * nv + nw * nw);
}

double norm_L4_stress(const FunctionSpaces& sp, const Eigen::VectorXd& stress) {
  const int n = sp.scalar_dim();
  const auto& rule = triangle_rule();
  double acc = 0.0;
  for (int t = 0; t < sp.mesh().n_triangles(); ++t) {
    const auto& g = sp.geometry(t);
    const auto& dofs = sp.cell_dofs(t);
    for (const auto& qp : rule) {
      double val[6];
      p2_values(qp.l1, qp.l2, val);
      SymMat2 s{};
      for (int i = 0; i < 6; ++i) {
        s.s11 += stress[dofs[i]] * val[i];
        s.s12 += stress[n + dofs[i]] * val[i];
        s.s22 += stress[2 * n + dofs[i]] * val[i];
      }
      const double f2 = s.frobenius_sq();
      acc += qp.w * g.det_j * f2 * f2;
    }
  }
  return std::pow(acc, 0.25);
}

double norm_L4_scalar(const FunctionSpaces& sp, const Eigen::VectorXd& coeffs) {
  const auto& rule = triangle_rule();
  double acc = 0.0;
  for (int t = 0; t < sp.mesh().n_triangles(); ++t) {
    const auto& g = sp.geometry(t);
    const auto& dofs = sp.cell_dofs(t);
    for (const auto& qp : rule) {
      double val[6];
      p2_values(qp.l1, qp.l2, val);
      double v = 0.0;
      for (int i = 0; i < 6; ++i) v += coeffs[dofs[i]] * val[i];
      acc += qp.w * g.det_j * v * v * v * v;
    }
  }
  return std::pow(acc, 0.25);
}

double norm_H1_scalar(const FunctionSpaces& sp, const Eigen::VectorXd& coeffs) {
  return std::sqrt(coeffs.dot(sp.scalar_mass() * coeffs) +
                   coeffs.dot(sp.scalar_stiffness() * coeffs));
}

double norm_L2_pressure(const FunctionSpaces& sp, const Eigen::VectorXd& pressure) {
  // P1 mass quadratic form, assembled on the fly (pressure norms are not on
  // any hot path).
  const auto& mesh = sp.mesh();
  double acc = 0.0;
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const auto& tri = mesh.triangles[t];
    const double area = mesh.triangle_area(t);
    const double p0 = pressure[tri[0]], p1 = pressure[tri[1]], p2 = pressure[tri[2]];
    // Exact P1 mass: area/6 * (sum of squares) + area/12 * (cross terms) ...
    // int (sum pi li)^2 = area/6 (p0^2+p1^2+p2^2 + p0 p1 + p1 p2 + p0 p2).
    acc += area / 6.0 * (p0 * p0 + p1 * p1 + p2 * p2 + p0 * p1 + p1 * p2 + p0 * p2);
  }
  return sqrt_clamped(acc);
}

double h_minus1_norm(const FunctionSpaces& sp, const Eigen::VectorXd& velocity_load) {
  const int n = sp.scalar_dim();
  const auto& factor = sp.dirichlet_stiffness_factor();
  double acc = 0.0;
  for (int c = 0; c < 2; ++c) {
    const Eigen::VectorXd rc = sp.gather_interior_scalar(velocity_load.segment(c * n, n));
    const Eigen::VectorXd wc = factor.solve(rc);
    acc += rc.dot(wc);  // = ||grad w_c||^2 by Galerkin orthogonality
  }
  return sqrt_clamped(acc);
}

double h_minus1_norm_field(const FunctionSpaces& sp, const VectorField& f) {
  return h_minus1_norm(sp, assemble_velocity_load(sp, f));
}

}  // namespace oldroyd
