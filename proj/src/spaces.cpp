#include "oldroyd/spaces.hpp"

#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace oldroyd {

void p2_values(double l1, double l2, double out[6]) {
  const double l0 = 1.0 - l1 - l2;
  out[0] = l0 * (2.0 * l0 - 1.0);
  out[1] = l1 * (2.0 * l1 - 1.0);
  out[2] = l2 * (2.0 * l2 - 1.0);
  out[3] = 4.0 * l0 * l1;
  out[4] = 4.0 * l1 * l2;
  out[5] = 4.0 * l2 * l0;
}

void p2_ref_grads(double l1, double l2, double out[6][2]) {
  const double l0 = 1.0 - l1 - l2;
  out[0][0] = -(4.0 * l0 - 1.0);
  out[0][1] = -(4.0 * l0 - 1.0);
  out[1][0] = 4.0 * l1 - 1.0;
  out[1][1] = 0.0;
  out[2][0] = 0.0;
  out[2][1] = 4.0 * l2 - 1.0;
  out[3][0] = 4.0 * (l0 - l1);
  out[3][1] = -4.0 * l1;
  out[4][0] = 4.0 * l2;
  out[4][1] = 4.0 * l1;
  out[5][0] = -4.0 * l2;
  out[5][1] = 4.0 * (l0 - l2);
}

namespace {

std::pair<int, int> edge_key(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

}  // namespace

FunctionSpaces::FunctionSpaces(Mesh mesh) : mesh_(std::move(mesh)) {
  mesh_.validate();
  const int nv = mesh_.n_vertices();
  const int nt = mesh_.n_triangles();

  // Enumerate edges; edge dofs follow vertex dofs.
  std::map<std::pair<int, int>, int> edge_id;
  std::vector<std::pair<int, int>> edges;
  const auto edge_dof = [&](int a, int b) {
    const auto key = edge_key(a, b);
    auto it = edge_id.find(key);
    if (it != edge_id.end()) return nv + it->second;
    const int id = static_cast<int>(edges.size());
    edge_id.emplace(key, id);
    edges.push_back(key);
    return nv + id;
  };

  cell_dofs_.resize(nt);
  for (int t = 0; t < nt; ++t) {
    const auto& tri = mesh_.triangles[t];
    cell_dofs_[t] = {tri[0],
                     tri[1],
                     tri[2],
                     edge_dof(tri[0], tri[1]),
                     edge_dof(tri[1], tri[2]),
                     edge_dof(tri[2], tri[0])};
  }
  n_scalar_ = nv + static_cast<int>(edges.size());

  dof_points_.resize(n_scalar_);
  for (int v = 0; v < nv; ++v) dof_points_[v] = mesh_.vertices[v];
  for (size_t e = 0; e < edges.size(); ++e) {
    const auto& [a, b] = edges[e];
    dof_points_[nv + e] = {0.5 * (mesh_.vertices[a].x + mesh_.vertices[b].x),
                           0.5 * (mesh_.vertices[a].y + mesh_.vertices[b].y)};
  }

  dof_on_boundary_.assign(n_scalar_, false);
  for (int v : boundary_vertices(mesh_)) dof_on_boundary_[v] = true;
  for (const auto& e : mesh_.boundary_edges) {
    auto it = edge_id.find(edge_key(e.a, e.b));
    if (it == edge_id.end())
      throw std::runtime_error("FunctionSpaces: boundary edge missing from edge set");
    dof_on_boundary_[nv + it->second] = true;
  }

  scalar_to_interior_.assign(n_scalar_, -1);
  for (int i = 0; i < n_scalar_; ++i) {
    if (!dof_on_boundary_[i]) {
      scalar_to_interior_[i] = static_cast<int>(interior_scalar_.size());
      interior_scalar_.push_back(i);
    }
  }
  interior_velocity_.reserve(2 * interior_scalar_.size());
  for (int c = 0; c < 2; ++c)
    for (int i : interior_scalar_) interior_velocity_.push_back(c * n_scalar_ + i);

  // Element geometry.
  geometry_.resize(nt);
  for (int t = 0; t < nt; ++t) {
    const auto& tri = mesh_.triangles[t];
    const Vec2 p0 = mesh_.vertices[tri[0]];
    const Vec2 p1 = mesh_.vertices[tri[1]];
    const Vec2 p2 = mesh_.vertices[tri[2]];
    const double j11 = p1.x - p0.x, j12 = p2.x - p0.x;
    const double j21 = p1.y - p0.y, j22 = p2.y - p0.y;
    const double det = j11 * j22 - j12 * j21;
    if (!(det > 0.0)) throw std::runtime_error("FunctionSpaces: nonpositive Jacobian");
    auto& g = geometry_[t];
    g.det_j = det;
    // J^{-1} = [[j22, -j12], [-j21, j11]] / det;  J^{-T} is its transpose.
    g.inv_jt[0][0] = j22 / det;
    g.inv_jt[0][1] = -j21 / det;
    g.inv_jt[1][0] = -j12 / det;
    g.inv_jt[1][1] = j11 / det;
  }

  // Scalar P2 mass and stiffness.
  std::vector<Eigen::Triplet<double>> tm, tk;
  tm.reserve(nt * 36);
  tk.reserve(nt * 36);
  const auto& rule = triangle_rule();
  for (int t = 0; t < nt; ++t) {
    const auto& g = geometry_[t];
    const auto& dofs = cell_dofs_[t];
    double me[6][6] = {}, ke[6][6] = {};
    for (const auto& qp : rule) {
      double val[6], ref[6][2], grad[6][2];
      p2_values(qp.l1, qp.l2, val);
      p2_ref_grads(qp.l1, qp.l2, ref);
      for (int i = 0; i < 6; ++i) {
        grad[i][0] = g.inv_jt[0][0] * ref[i][0] + g.inv_jt[0][1] * ref[i][1];
        grad[i][1] = g.inv_jt[1][0] * ref[i][0] + g.inv_jt[1][1] * ref[i][1];
      }
      const double w = qp.w * g.det_j;
      for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
          me[i][j] += w * val[i] * val[j];
          ke[i][j] += w * (grad[i][0] * grad[j][0] + grad[i][1] * grad[j][1]);
        }
    }
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) {
        tm.emplace_back(dofs[i], dofs[j], me[i][j]);
        tk.emplace_back(dofs[i], dofs[j], ke[i][j]);
      }
  }
  scalar_mass_.resize(n_scalar_, n_scalar_);
  scalar_mass_.setFromTriplets(tm.begin(), tm.end());
  scalar_stiffness_.resize(n_scalar_, n_scalar_);
  scalar_stiffness_.setFromTriplets(tk.begin(), tk.end());

  // P1 basis integrals: area/3 per incident triangle vertex.
  pressure_integral_ = Eigen::VectorXd::Zero(nv);
  for (int t = 0; t < nt; ++t) {
    const double third = mesh_.triangle_area(t) / 3.0;
    for (int v : mesh_.triangles[t]) pressure_integral_[v] += third;
  }

  // Factors.
  {
    const int ni = static_cast<int>(interior_scalar_.size());
    std::vector<Eigen::Triplet<double>> ti;
    ti.reserve(scalar_stiffness_.nonZeros());
    for (int col = 0; col < scalar_stiffness_.outerSize(); ++col)
      for (SpMat::InnerIterator it(scalar_stiffness_, col); it; ++it) {
        const int ri = scalar_to_interior_[it.row()];
        const int ci = scalar_to_interior_[col];
        if (ri >= 0 && ci >= 0) ti.emplace_back(ri, ci, it.value());
      }
    SpMat k_int(ni, ni);
    k_int.setFromTriplets(ti.begin(), ti.end());
    dirichlet_factor_ = std::make_shared<Eigen::SimplicialLDLT<SpMat>>();
    dirichlet_factor_->compute(k_int);
    if (dirichlet_factor_->info() != Eigen::Success)
      throw std::runtime_error("FunctionSpaces: interior stiffness factorization failed");
  }
  {
    SpMat h1 = scalar_mass_ + scalar_stiffness_;
    h1_factor_ = std::make_shared<Eigen::SimplicialLDLT<SpMat>>();
    h1_factor_->compute(h1);
    if (h1_factor_->info() != Eigen::Success)
      throw std::runtime_error("FunctionSpaces: H1 Gram factorization failed");
  }
}

Vec2 FunctionSpaces::map_point(int t, double l1, double l2) const {
  const auto& tri = mesh_.triangles[t];
  const Vec2 p0 = mesh_.vertices[tri[0]];
  const Vec2 p1 = mesh_.vertices[tri[1]];
  const Vec2 p2 = mesh_.vertices[tri[2]];
  const double l0 = 1.0 - l1 - l2;
  return {l0 * p0.x + l1 * p1.x + l2 * p2.x, l0 * p0.y + l1 * p1.y + l2 * p2.y};
}

Eigen::VectorXd FunctionSpaces::gather_interior_scalar(const Eigen::VectorXd& full) const {
  Eigen::VectorXd out(interior_scalar_.size());
  for (size_t i = 0; i < interior_scalar_.size(); ++i) out[i] = full[interior_scalar_[i]];
  return out;
}

Eigen::VectorXd FunctionSpaces::gather_interior_velocity(const Eigen::VectorXd& full) const {
  Eigen::VectorXd out(interior_velocity_.size());
  for (size_t i = 0; i < interior_velocity_.size(); ++i) out[i] = full[interior_velocity_[i]];
  return out;
}

Eigen::VectorXd FunctionSpaces::scatter_interior_velocity(const Eigen::VectorXd& interior) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(velocity_dim());
  for (size_t i = 0; i < interior_velocity_.size(); ++i) out[interior_velocity_[i]] = interior[i];
  return out;
}

namespace {

SpMat restrict_matrix(const SpMat& full, const std::vector<int>& row_map,
                      const std::vector<int>& col_map, int nrows, int ncols) {
  std::vector<Eigen::Triplet<double>> tr;
  tr.reserve(full.nonZeros());
  for (int col = 0; col < full.outerSize(); ++col)
    for (SpMat::InnerIterator it(full, col); it; ++it) {
      const int r = row_map.empty() ? static_cast<int>(it.row()) : row_map[it.row()];
      const int c = col_map.empty() ? col : col_map[col];
      if (r >= 0 && c >= 0) tr.emplace_back(r, c, it.value());
    }
  SpMat out(nrows, ncols);
  out.setFromTriplets(tr.begin(), tr.end());
  return out;
}

}  // namespace

SpMat FunctionSpaces::restrict_velocity(const SpMat& full) const {
  std::vector<int> map(velocity_dim(), -1);
  for (size_t i = 0; i < interior_velocity_.size(); ++i) map[interior_velocity_[i]] = static_cast<int>(i);
  const int ni = static_cast<int>(interior_velocity_.size());
  return restrict_matrix(full, map, map, ni, ni);
}

SpMat FunctionSpaces::restrict_cols_velocity(const SpMat& full) const {
  std::vector<int> map(velocity_dim(), -1);
  for (size_t i = 0; i < interior_velocity_.size(); ++i) map[interior_velocity_[i]] = static_cast<int>(i);
  return restrict_matrix(full, {}, map, static_cast<int>(full.rows()),
                         static_cast<int>(interior_velocity_.size()));
}

SpMat FunctionSpaces::restrict_rows_velocity(const SpMat& full) const {
  std::vector<int> map(velocity_dim(), -1);
  for (size_t i = 0; i < interior_velocity_.size(); ++i) map[interior_velocity_[i]] = static_cast<int>(i);
  return restrict_matrix(full, map, {}, static_cast<int>(interior_velocity_.size()),
                         static_cast<int>(full.cols()));
}

State FunctionSpaces::zero_state() const {
  State s;
  s.velocity = Eigen::VectorXd::Zero(velocity_dim());
  s.pressure = Eigen::VectorXd::Zero(pressure_dim());
  s.stress = Eigen::VectorXd::Zero(stress_dim());
  return s;
}

bool FunctionSpaces::locate(double x, double y, int& tri, double& l1, double& l2) const {
  constexpr double tol = 1e-10;
  for (int t = 0; t < mesh_.n_triangles(); ++t) {
    const auto& g = geometry_[t];
    const auto& tv = mesh_.triangles[t];
    const Vec2 p0 = mesh_.vertices[tv[0]];
    const double dx = x - p0.x, dy = y - p0.y;
    // (l1, l2) = J^{-1} (x - p0);  J^{-1} rows are the columns of inv_jt.
    const double a = g.inv_jt[0][0] * dx + g.inv_jt[1][0] * dy;
    const double b = g.inv_jt[0][1] * dx + g.inv_jt[1][1] * dy;
    if (a >= -tol && b >= -tol && a + b <= 1.0 + tol) {
      tri = t;
      l1 = a;
      l2 = b;
      return true;
    }
  }
  return false;
}

double FunctionSpaces::eval_scalar_p2(const Eigen::VectorXd& coeffs, double x, double y) const {
  int t;
  double l1, l2;
  if (!locate(x, y, t, l1, l2))
    throw std::runtime_error("eval_scalar_p2: point outside mesh");
  double val[6];
  p2_values(l1, l2, val);
  double acc = 0.0;
  for (int i = 0; i < 6; ++i) acc += coeffs[cell_dofs_[t][i]] * val[i];
  return acc;
}

double FunctionSpaces::eval_scalar_p1(const Eigen::VectorXd& coeffs, double x, double y) const {
  int t;
  double l1, l2;
  if (!locate(x, y, t, l1, l2))
    throw std::runtime_error("eval_scalar_p1: point outside mesh");
  const auto& tv = mesh_.triangles[t];
  return coeffs[tv[0]] * (1.0 - l1 - l2) + coeffs[tv[1]] * l1 + coeffs[tv[2]] * l2;
}

}  // namespace oldroyd
