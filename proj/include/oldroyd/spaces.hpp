#pragma once

// Discrete function spaces on a triangle mesh.
//
// One scalar continuous P2 layout (vertex + edge-midpoint dofs) is shared by
// every scalar unknown:
//   velocity  = 2 x P2, component-blocked [u1; u2], homogeneous Dirichlet
//               (boundary dofs pinned to zero),
//   stress    = 3 x P2, component-blocked [s11; s12; s22], no constraints
//               (diffusive natural condition),
//   pressure  = P1 on vertices, fixed later to zero mean.
//
// The symmetric off-diagonal stress component is stored once; all inner
// products weight it by 2 (Frobenius convention), handled by the component
// weights {1, 2, 1} wherever stress blocks are formed.

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include <array>
#include <memory>
#include <vector>

#include "oldroyd/mesh.hpp"
#include "oldroyd/quadrature.hpp"

namespace oldroyd {

using SpMat = Eigen::SparseMatrix<double>;

// Quadratic Lagrange basis on the reference triangle, barycentric form.
// Local dof order: vertices 0,1,2 then midpoints of edges (0,1), (1,2), (2,0).
void p2_values(double l1, double l2, double out[6]);
// Gradients with respect to the reference coordinates (l1, l2).
void p2_ref_grads(double l1, double l2, double out[6][2]);

// Frobenius weights of the stress components {s11, s12, s22}.
inline constexpr double kStressWeight[3] = {1.0, 2.0, 1.0};

struct State {
  Eigen::VectorXd velocity;  // 2N, boundary entries exactly zero
  Eigen::VectorXd pressure;  // n_vertices
  Eigen::VectorXd stress;    // 3N
};

class FunctionSpaces {
 public:
  explicit FunctionSpaces(Mesh mesh);

  const Mesh& mesh() const { return mesh_; }

  int scalar_dim() const { return n_scalar_; }
  int velocity_dim() const { return 2 * n_scalar_; }
  int stress_dim() const { return 3 * n_scalar_; }
  int pressure_dim() const { return mesh_.n_vertices(); }

  // P2 node coordinates (vertices then edge midpoints).
  const std::vector<Vec2>& dof_points() const { return dof_points_; }
  const std::vector<bool>& dof_on_boundary() const { return dof_on_boundary_; }
  const std::vector<int>& interior_scalar() const { return interior_scalar_; }
  // Interior velocity dofs as indices into the blocked [u1; u2] vector.
  const std::vector<int>& interior_velocity() const { return interior_velocity_; }

  const std::array<int, 6>& cell_dofs(int t) const { return cell_dofs_[t]; }

  struct ElementGeometry {
    double inv_jt[2][2];  // J^{-T}: maps reference gradients to physical ones
    double det_j;         // = 2 * area, positive for CCW triangles
  };
  const ElementGeometry& geometry(int t) const { return geometry_[t]; }

  // Physical coordinates of a reference point in element t.
  Vec2 map_point(int t, double l1, double l2) const;

  // Raw scalar Gram matrices on the full P2 space.
  const SpMat& scalar_mass() const { return scalar_mass_; }
  const SpMat& scalar_stiffness() const { return scalar_stiffness_; }
  // Integrals of the P1 pressure basis functions (the zero-mean constraint row).
  const Eigen::VectorXd& pressure_integral() const { return pressure_integral_; }

  // Cholesky factor of the interior-restricted stiffness (Dirichlet Poisson /
  // velocity Riesz solves, shared by both components).
  const Eigen::SimplicialLDLT<SpMat>& dirichlet_stiffness_factor() const {
    return *dirichlet_factor_;
  }
  // Cholesky factor of the full H1 Gram M + K (stress Riesz solves, shared by
  // all three components up to the Frobenius weights).
  const Eigen::SimplicialLDLT<SpMat>& h1_factor() const { return *h1_factor_; }

  // Gather/scatter between full scalar vectors and the interior subset.
  Eigen::VectorXd gather_interior_scalar(const Eigen::VectorXd& full) const;
  // Same for blocked velocity vectors (2N <-> 2Ni).
  Eigen::VectorXd gather_interior_velocity(const Eigen::VectorXd& full) const;
  Eigen::VectorXd scatter_interior_velocity(const Eigen::VectorXd& interior) const;

  // Restrict a 2N x 2N velocity operator to interior rows and columns.
  SpMat restrict_velocity(const SpMat& full) const;
  // Restrict the columns of an (np x 2N) or rows of a (2N x m) block.
  SpMat restrict_cols_velocity(const SpMat& full) const;
  SpMat restrict_rows_velocity(const SpMat& full) const;

  State zero_state() const;

  // Point evaluation of discrete fields (brute-force element search; meant
  // for tests, prolongation, and export, not inner loops).
  double eval_scalar_p2(const Eigen::VectorXd& coeffs, double x, double y) const;
  double eval_scalar_p1(const Eigen::VectorXd& coeffs, double x, double y) const;

 private:
  Mesh mesh_;
  int n_scalar_ = 0;
  std::vector<std::array<int, 6>> cell_dofs_;
  std::vector<Vec2> dof_points_;
  std::vector<bool> dof_on_boundary_;
  std::vector<int> interior_scalar_;
  std::vector<int> interior_velocity_;
  std::vector<int> scalar_to_interior_;  // -1 for boundary dofs
  std::vector<ElementGeometry> geometry_;
  SpMat scalar_mass_, scalar_stiffness_;
  Eigen::VectorXd pressure_integral_;
  std::shared_ptr<Eigen::SimplicialLDLT<SpMat>> dirichlet_factor_, h1_factor_;

  bool locate(double x, double y, int& tri, double& l1, double& l2) const;
};

}  // namespace oldroyd
