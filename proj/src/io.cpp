#include "oldroyd/io.hpp"

#include <cstdio>
#include <ctime>
#include <fstream>
#include <stdexcept>

#include "oldroyd/constants.hpp"

namespace oldroyd {

namespace {

namespace fs = std::filesystem;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ofstream open_or_throw(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("io: cannot open " + path.string());
  return out;
}

void close_or_throw(std::ofstream& out, const fs::path& path) {
  out.flush();
  if (!out) throw std::runtime_error("io: write failed: " + path.string());
}

// Linear pressure sampled at every quadratic node: vertex coefficients as
// stored, edge midpoints as endpoint averages (both incident elements agree
// bitwise since addition commutes).
Eigen::VectorXd pressure_at_nodes(const FunctionSpaces& sp,
                                  const Eigen::VectorXd& pressure) {
  Eigen::VectorXd node(sp.scalar_dim());
  node.head(sp.pressure_dim()) = pressure;
  for (int t = 0; t < sp.mesh().n_triangles(); ++t) {
    const auto& d = sp.cell_dofs(t);
    for (int e = 0; e < 3; ++e)
      node[d[3 + e]] = 0.5 * (pressure[d[e]] + pressure[d[(e + 1) % 3]]);
  }
  return node;
}

const char* branch_name(RadiusBranch b) {
  switch (b) {
    case RadiusBranch::small_root: return "small-root";
    case RadiusBranch::corotational: return "corotational";
    case RadiusBranch::degenerate: return "degenerate";
  }
  return "?";
}

}  // namespace

void write_fields_csv(const FunctionSpaces& sp, const State& xi,
                      const fs::path& path) {
  std::ofstream out = open_or_throw(path);
  const int n = sp.scalar_dim();
  const Eigen::VectorXd p_node = pressure_at_nodes(sp, xi.pressure);
  out << "x,y,u1,u2,p,s11,s12,s22\n";
  for (int i = 0; i < n; ++i) {
    const Vec2 q = sp.dof_points()[i];
    out << fmt(q.x) << ',' << fmt(q.y) << ',' << fmt(xi.velocity[i]) << ','
        << fmt(xi.velocity[n + i]) << ',' << fmt(p_node[i]) << ','
        << fmt(xi.stress[i]) << ',' << fmt(xi.stress[n + i]) << ','
        << fmt(xi.stress[2 * n + i]) << '\n';
  }
  close_or_throw(out, path);
}

void write_fields_vtk(const FunctionSpaces& sp, const State& xi,
                      const fs::path& path) {
  std::ofstream out = open_or_throw(path);
  const int n = sp.scalar_dim();
  const int m = sp.mesh().n_triangles();
  out << "# vtk DataFile Version 3.0\n"
      << "stationary viscoelastic fields\n"
      << "ASCII\n"
      << "DATASET UNSTRUCTURED_GRID\n"
      << "POINTS " << n << " double\n";
  for (const Vec2& q : sp.dof_points()) out << fmt(q.x) << ' ' << fmt(q.y) << " 0\n";
  out << "CELLS " << 4 * m << ' ' << 16 * m << '\n';
  for (int t = 0; t < m; ++t) {
    const auto& d = sp.cell_dofs(t);
    // Corner subtriangles then the medial one; all inherit the parent's
    // counterclockwise orientation.
    const int sub[4][3] = {{d[0], d[3], d[5]},
                           {d[3], d[1], d[4]},
                           {d[5], d[4], d[2]},
                           {d[3], d[4], d[5]}};
    for (const auto& s : sub) out << "3 " << s[0] << ' ' << s[1] << ' ' << s[2] << '\n';
  }
  out << "CELL_TYPES " << 4 * m << '\n';
  for (int i = 0; i < 4 * m; ++i) out << "5\n";

  const Eigen::VectorXd p_node = pressure_at_nodes(sp, xi.pressure);
  out << "POINT_DATA " << n << '\n';
  out << "VECTORS velocity double\n";
  for (int i = 0; i < n; ++i)
    out << fmt(xi.velocity[i]) << ' ' << fmt(xi.velocity[n + i]) << " 0\n";
  const struct {
    const char* name;
    const Eigen::VectorXd* values;
    int offset;
  } scalars[] = {{"pressure", &p_node, 0},
                 {"s11", &xi.stress, 0},
                 {"s12", &xi.stress, n},
                 {"s22", &xi.stress, 2 * n}};
  for (const auto& s : scalars) {
    out << "SCALARS " << s.name << " double 1\nLOOKUP_TABLE default\n";
    for (int i = 0; i < n; ++i) out << fmt((*s.values)[s.offset + i]) << '\n';
  }
  close_or_throw(out, path);
}

nlohmann::json to_json(const SolveReport& r) {
  return {{"status", to_string(r.status)},
          {"converged", r.converged()},
          {"iterations", r.iterations},
          {"momentum_residual", r.momentum_residual},
          {"stress_residual", r.stress_residual},
          {"relaxation_used", r.relaxation_used}};
}

nlohmann::json to_json(const ConstantSet& c) {
  return {{"c_omega", c.c_omega},
          {"f_norm", c.f_norm},
          {"alpha", c.coeffs.alpha},
          {"beta", c.coeffs.beta},
          {"gamma", c.coeffs.gamma},
          {"c1", c.c1},
          {"existence_ok", c.existence_ok},
          {"radius",
           {{"value", c.radius.value}, {"branch", branch_name(c.radius.branch)}}},
          {"uniqueness",
           {{"a_coef", c.uniqueness.a_coef},
            {"b_coef", c.uniqueness.b_coef},
            {"re_zero_fallback", c.uniqueness.re_zero_fallback},
            {"ok", c.uniqueness.ok()}}}};
}

nlohmann::json to_json(const Certificate& c) {
  return {{"c_omega_h", c.c_omega_h},
          {"f_norm_h", c.f_norm_h},
          {"constants", to_json(c.constants)},
          {"existence_ok", c.existence_ok},
          {"bound_ok", c.bound_ok},
          {"uniqueness_ok", c.uniqueness_ok},
          {"branch", to_string(c.branch)},
          {"state_norm_x", c.state_norm_x},
          {"slack", c.slack},
          {"notes", c.notes}};
}

nlohmann::json to_json(const ConvergenceStudy& s) {
  nlohmann::json levels = nlohmann::json::array();
  for (const ConvergenceLevel& l : s.levels)
    levels.push_back({{"n", l.n},
                      {"velocity_h1", l.errors.velocity_h1},
                      {"pressure_l2", l.errors.pressure_l2},
                      {"stress_w", l.errors.stress_w},
                      {"iterations", l.report.iterations},
                      {"status", to_string(l.report.status)}});
  return {{"levels", levels},
          {"velocity_order", s.velocity_order},
          {"pressure_order", s.pressure_order},
          {"stress_order", s.stress_order},
          {"saturated", s.saturated}};
}

nlohmann::json to_json(const ProbeReport& r) {
  nlohmann::json starts = nlohmann::json::array();
  for (const ProbeStart& s : r.starts)
    starts.push_back({{"converged", s.converged},
                      {"iterations", s.iterations},
                      {"initial_norm_x", s.initial_norm_x},
                      {"state_norm_x", s.state_norm_x}});
  return {{"starts", starts},
          {"n_converged", r.n_converged},
          {"any_failed", r.any_failed},
          {"max_pairwise_distance", r.max_pairwise_distance},
          {"escaped_ball", r.escaped_ball}};
}

void write_json(const nlohmann::json& j, const fs::path& path) {
  std::ofstream out = open_or_throw(path);
  out << j.dump(2) << '\n';
  close_or_throw(out, path);
}

fs::path make_run_dir(const fs::path& base, const std::string& label,
                      const std::string& config_text) {
  fs::create_directories(base);
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y%m%d-%H%M%S", &tm);
  const std::string name = std::string(stamp) + "-" + label;
  fs::path dir = base / name;
  for (int k = 2; fs::exists(dir); ++k) dir = base / (name + "-" + std::to_string(k));
  fs::create_directory(dir);
  std::ofstream out = open_or_throw(dir / "config.txt");
  out << config_text;
  close_or_throw(out, dir / "config.txt");
  return dir;
}

}  // namespace oldroyd
