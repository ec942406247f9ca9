#include "oldroyd/assembly.hpp"

#include <vector>

#include "oldroyd/quadrature.hpp"
#include "oldroyd/tensor.hpp"

namespace oldroyd {

namespace {

using Triplets = std::vector<Eigen::Triplet<double>>;

// Physical basis gradients at one quadrature point of one element.
struct BasisAtPoint {
  double val[6];
  double grad[6][2];
};

BasisAtPoint basis_at(const FunctionSpaces::ElementGeometry& g, double l1, double l2) {
  BasisAtPoint b;
  double ref[6][2];
  p2_values(l1, l2, b.val);
  p2_ref_grads(l1, l2, ref);
  for (int i = 0; i < 6; ++i) {
    b.grad[i][0] = g.inv_jt[0][0] * ref[i][0] + g.inv_jt[0][1] * ref[i][1];
    b.grad[i][1] = g.inv_jt[1][0] * ref[i][0] + g.inv_jt[1][1] * ref[i][1];
  }
  return b;
}

// Element velocity coefficients, both components.
struct ElementVelocity {
  double u1[6], u2[6];
};

ElementVelocity gather_velocity(const FunctionSpaces& sp, const Eigen::VectorXd& velocity,
                                int t) {
  ElementVelocity ev;
  const int n = sp.scalar_dim();
  const auto& dofs = sp.cell_dofs(t);
  for (int i = 0; i < 6; ++i) {
    ev.u1[i] = velocity[dofs[i]];
    ev.u2[i] = velocity[n + dofs[i]];
  }
  return ev;
}

VelocitySample sample_from(const ElementVelocity& ev, const BasisAtPoint& b) {
  VelocitySample s;
  s.value = {0.0, 0.0};
  s.grad = {};
  for (int i = 0; i < 6; ++i) {
    s.value.x += ev.u1[i] * b.val[i];
    s.value.y += ev.u2[i] * b.val[i];
    s.grad.a11 += ev.u1[i] * b.grad[i][0];
    s.grad.a12 += ev.u1[i] * b.grad[i][1];
    s.grad.a21 += ev.u2[i] * b.grad[i][0];
    s.grad.a22 += ev.u2[i] * b.grad[i][1];
  }
  return s;
}

// Insert the exactly antisymmetric pair of contributions for a local skew
// matrix a[i][j] ~ (u.grad phi_j, phi_i): value/2 at (i,j) and -value/2 at
// (j,i).  Summation order of the two mirror entries matches, so the global
// matrix is entrywise antisymmetric in floating point, not only in theory.
void insert_skew(Triplets& tr, const std::array<int, 6>& dofs, const double a[6][6],
                 int row_offset, int col_offset, double factor) {
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      const double half = 0.5 * factor * a[i][j];
      tr.emplace_back(row_offset + dofs[i], col_offset + dofs[j], half);
      tr.emplace_back(col_offset + dofs[j], row_offset + dofs[i], -half);
    }
}

// Contraction of a symmetric matrix with the component basis tensors
// E_0 = e11, E_1 = e12 + e21, E_2 = e22.
double contract_basis(const SymMat2& m, int c) {
  switch (c) {
    case 0: return m.s11;
    case 1: return 2.0 * m.s12;
    default: return m.s22;
  }
}

SymMat2 basis_tensor(int c) {
  switch (c) {
    case 0: return {1.0, 0.0, 0.0};
    case 1: return {0.0, 1.0, 0.0};
    default: return {0.0, 0.0, 1.0};
  }
}

}  // namespace

StokesBlocks assemble_stokes_blocks(const FunctionSpaces& sp, const FluidParams& p) {
  p.validate();
  const int n = sp.scalar_dim();
  const int nt = sp.mesh().n_triangles();
  const auto& rule = triangle_rule();

  StokesBlocks out;

  // Viscous block: (1-r) times the scalar stiffness on each component.
  {
    Triplets tr;
    tr.reserve(2 * sp.scalar_stiffness().nonZeros());
    const double c = 1.0 - p.r;
    for (int col = 0; col < sp.scalar_stiffness().outerSize(); ++col)
      for (SpMat::InnerIterator it(sp.scalar_stiffness(), col); it; ++it) {
        tr.emplace_back(it.row(), col, c * it.value());
        tr.emplace_back(n + it.row(), n + col, c * it.value());
      }
    out.viscous.resize(2 * n, 2 * n);
    out.viscous.setFromTriplets(tr.begin(), tr.end());
  }

  // Divergence and stress coupling blocks share the integrals
  // int psi_q d_c N_i  and  int N_k d_c N_i.
  Triplets t_div, t_cpl;
  t_div.reserve(nt * 36);
  t_cpl.reserve(nt * 144);
  for (int t = 0; t < nt; ++t) {
    const auto& g = sp.geometry(t);
    const auto& dofs = sp.cell_dofs(t);
    const auto& tri = sp.mesh().triangles[t];
    double div_loc[3][6][2] = {};     // [p1 test][p2 trial][derivative dir]
    double cpl_loc[6][6][2] = {};     // [p2 row][p2 col][derivative dir]
    for (const auto& qp : rule) {
      const auto b = basis_at(g, qp.l1, qp.l2);
      const double p1v[3] = {qp.l0, qp.l1, qp.l2};
      const double w = qp.w * g.det_j;
      for (int i = 0; i < 6; ++i)
        for (int d = 0; d < 2; ++d) {
          const double gd = w * b.grad[i][d];
          for (int q = 0; q < 3; ++q) div_loc[q][i][d] += p1v[q] * gd;
          for (int k = 0; k < 6; ++k) cpl_loc[i][k][d] += b.val[k] * gd;
        }
    }
    for (int q = 0; q < 3; ++q)
      for (int i = 0; i < 6; ++i) {
        // div u = d1 u1 + d2 u2.
        t_div.emplace_back(tri[q], dofs[i], div_loc[q][i][0]);
        t_div.emplace_back(tri[q], n + dofs[i], div_loc[q][i][1]);
      }
    for (int i = 0; i < 6; ++i)
      for (int k = 0; k < 6; ++k) {
        // sigma : D(v) = s11 d1 v1 + s12 (d2 v1 + d1 v2) + s22 d2 v2.
        t_cpl.emplace_back(dofs[i], dofs[k], cpl_loc[i][k][0]);           // v1 ~ s11
        t_cpl.emplace_back(dofs[i], n + dofs[k], cpl_loc[i][k][1]);       // v1 ~ s12
        t_cpl.emplace_back(n + dofs[i], n + dofs[k], cpl_loc[i][k][0]);   // v2 ~ s12
        t_cpl.emplace_back(n + dofs[i], 2 * n + dofs[k], cpl_loc[i][k][1]);  // v2 ~ s22
      }
  }
  out.divergence.resize(sp.pressure_dim(), 2 * n);
  out.divergence.setFromTriplets(t_div.begin(), t_div.end());
  out.coupling.resize(2 * n, 3 * n);
  out.coupling.setFromTriplets(t_cpl.begin(), t_cpl.end());
  return out;
}

SpMat assemble_convection(const FunctionSpaces& sp, const Eigen::VectorXd& velocity) {
  const int n = sp.scalar_dim();
  const int nt = sp.mesh().n_triangles();
  const auto& rule = triangle_rule();
  Triplets tr;
  tr.reserve(nt * 144);
  for (int t = 0; t < nt; ++t) {
    const auto& g = sp.geometry(t);
    const auto& dofs = sp.cell_dofs(t);
    const auto ev = gather_velocity(sp, velocity, t);
    double a[6][6] = {};  // (u.grad N_j, N_i)
    for (const auto& qp : rule) {
      const auto b = basis_at(g, qp.l1, qp.l2);
      const auto s = sample_from(ev, b);
      const double w = qp.w * g.det_j;
      for (int j = 0; j < 6; ++j) {
        const double adv = w * (s.value.x * b.grad[j][0] + s.value.y * b.grad[j][1]);
        for (int i = 0; i < 6; ++i) a[i][j] += adv * b.val[i];
      }
    }
    // Same scalar skew operator acts on each velocity component.
    insert_skew(tr, dofs, a, 0, 0, 1.0);
    insert_skew(tr, dofs, a, n, n, 1.0);
  }
  SpMat out(2 * n, 2 * n);
  out.setFromTriplets(tr.begin(), tr.end());
  return out;
}

StressBlocks assemble_stress_blocks(const FunctionSpaces& sp, const FluidParams& p,
                                    const Eigen::VectorXd& velocity) {
  p.validate();
  const int n = sp.scalar_dim();
  const int nt = sp.mesh().n_triangles();
  const auto& rule = triangle_rule();
  StressBlocks out;

  // Mass and diffusion from the scalar Grams with the Frobenius weights.
  {
    Triplets tm, td;
    tm.reserve(3 * sp.scalar_mass().nonZeros());
    td.reserve(3 * sp.scalar_stiffness().nonZeros());
    for (int c = 0; c < 3; ++c) {
      const double wc = kStressWeight[c];
      for (int col = 0; col < sp.scalar_mass().outerSize(); ++col)
        for (SpMat::InnerIterator it(sp.scalar_mass(), col); it; ++it)
          tm.emplace_back(c * n + it.row(), c * n + col, wc * it.value());
      for (int col = 0; col < sp.scalar_stiffness().outerSize(); ++col)
        for (SpMat::InnerIterator it(sp.scalar_stiffness(), col); it; ++it)
          td.emplace_back(c * n + it.row(), c * n + col, p.diff * wc * it.value());
    }
    out.mass.resize(3 * n, 3 * n);
    out.mass.setFromTriplets(tm.begin(), tm.end());
    out.diffusion.resize(3 * n, 3 * n);
    out.diffusion.setFromTriplets(td.begin(), td.end());
  }

  // Source block 2r (D(u), tau); entrywise the transpose of the momentum
  // coupling block up to the factor 2r (checked in tests).
  {
    Triplets ts;
    ts.reserve(nt * 144);
    for (int t = 0; t < nt; ++t) {
      const auto& g = sp.geometry(t);
      const auto& dofs = sp.cell_dofs(t);
      double loc[6][6][2] = {};
      for (const auto& qp : rule) {
        const auto b = basis_at(g, qp.l1, qp.l2);
        const double w = qp.w * g.det_j;
        for (int k = 0; k < 6; ++k)
          for (int i = 0; i < 6; ++i)
            for (int d = 0; d < 2; ++d) loc[k][i][d] += w * b.val[k] * b.grad[i][d];
      }
      const double c2r = 2.0 * p.r;
      for (int k = 0; k < 6; ++k)
        for (int i = 0; i < 6; ++i) {
          ts.emplace_back(dofs[k], dofs[i], c2r * loc[k][i][0]);
          ts.emplace_back(n + dofs[k], dofs[i], c2r * loc[k][i][1]);
          ts.emplace_back(n + dofs[k], n + dofs[i], c2r * loc[k][i][0]);
          ts.emplace_back(2 * n + dofs[k], n + dofs[i], c2r * loc[k][i][1]);
        }
    }
    out.source.resize(3 * n, 2 * n);
    out.source.setFromTriplets(ts.begin(), ts.end());
  }

  // Advective transport and slip/rotation coupling, both scaled by we.
  if (p.we > 0.0) {
    Triplets tt, tg;
    tt.reserve(nt * 3 * 72);
    tg.reserve(nt * 9 * 36);
    for (int t = 0; t < nt; ++t) {
      const auto& g = sp.geometry(t);
      const auto& dofs = sp.cell_dofs(t);
      const auto ev = gather_velocity(sp, velocity, t);
      double adv[6][6] = {};       // (u.grad N_k, N_i)
      double cpl[3][3][6][6] = {}; // [sigma comp][tau comp][N_k][N_i]
      for (const auto& qp : rule) {
        const auto b = basis_at(g, qp.l1, qp.l2);
        const auto s = sample_from(ev, b);
        const double w = qp.w * g.det_j;
        for (int k = 0; k < 6; ++k) {
          const double a = w * (s.value.x * b.grad[k][0] + s.value.y * b.grad[k][1]);
          for (int i = 0; i < 6; ++i) adv[i][k] += a * b.val[i];
        }
        double kcc[3][3];
        for (int c = 0; c < 3; ++c) {
          const SymMat2 gc = convected_coupling(s.grad, basis_tensor(c), p.a);
          for (int cp = 0; cp < 3; ++cp) kcc[c][cp] = contract_basis(gc, cp);
        }
        for (int c = 0; c < 3; ++c)
          for (int cp = 0; cp < 3; ++cp) {
            if (kcc[c][cp] == 0.0) continue;
            const double kw = w * kcc[c][cp];
            for (int k = 0; k < 6; ++k)
              for (int i = 0; i < 6; ++i) cpl[c][cp][k][i] += kw * b.val[k] * b.val[i];
          }
      }
      for (int c = 0; c < 3; ++c)
        insert_skew(tt, dofs, adv, c * n, c * n, p.we * kStressWeight[c]);
      for (int c = 0; c < 3; ++c)
        for (int cp = 0; cp < 3; ++cp)
          for (int k = 0; k < 6; ++k)
            for (int i = 0; i < 6; ++i) {
              const double v = p.we * cpl[c][cp][k][i];
              if (v != 0.0) tg.emplace_back(cp * n + dofs[i], c * n + dofs[k], v);
            }
    }
    out.transport.resize(3 * n, 3 * n);
    out.transport.setFromTriplets(tt.begin(), tt.end());
    out.coupling.resize(3 * n, 3 * n);
    out.coupling.setFromTriplets(tg.begin(), tg.end());
  } else {
    out.transport.resize(3 * n, 3 * n);
    out.coupling.resize(3 * n, 3 * n);
  }
  return out;
}

Eigen::VectorXd assemble_velocity_load(const FunctionSpaces& sp, const VectorField& f) {
  const int n = sp.scalar_dim();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(2 * n);
  if (!f) return out;
  const auto& rule = triangle_rule();
  for (int t = 0; t < sp.mesh().n_triangles(); ++t) {
    const auto& g = sp.geometry(t);
    const auto& dofs = sp.cell_dofs(t);
    for (const auto& qp : rule) {
      double val[6];
      p2_values(qp.l1, qp.l2, val);
      const Vec2 x = sp.map_point(t, qp.l1, qp.l2);
      const Vec2 fv = f(x.x, x.y);
      const double w = qp.w * g.det_j;
      for (int i = 0; i < 6; ++i) {
        out[dofs[i]] += w * fv.x * val[i];
        out[n + dofs[i]] += w * fv.y * val[i];
      }
    }
  }
  return out;
}

Eigen::VectorXd assemble_stress_load(const FunctionSpaces& sp, const TensorField& gsrc) {
  const int n = sp.scalar_dim();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(3 * n);
  if (!gsrc) return out;
  const auto& rule = triangle_rule();
  for (int t = 0; t < sp.mesh().n_triangles(); ++t) {
    const auto& g = sp.geometry(t);
    const auto& dofs = sp.cell_dofs(t);
    for (const auto& qp : rule) {
      double val[6];
      p2_values(qp.l1, qp.l2, val);
      const Vec2 x = sp.map_point(t, qp.l1, qp.l2);
      const SymMat2 gv = gsrc(x.x, x.y);
      const double w = qp.w * g.det_j;
      for (int i = 0; i < 6; ++i) {
        // (g, E_c N_i) = w_c g_c N_i.
        out[dofs[i]] += w * gv.s11 * val[i];
        out[n + dofs[i]] += w * 2.0 * gv.s12 * val[i];
        out[2 * n + dofs[i]] += w * gv.s22 * val[i];
      }
    }
  }
  return out;
}

VelocitySample sample_velocity(const FunctionSpaces& sp, const Eigen::VectorXd& velocity,
                               int tri, double l1, double l2) {
  const auto b = basis_at(sp.geometry(tri), l1, l2);
  return sample_from(gather_velocity(sp, velocity, tri), b);
}

}  // namespace oldroyd
