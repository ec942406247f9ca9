#include "oldroyd/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace oldroyd {

namespace {

double signed_area(const Vec2& a, const Vec2& b, const Vec2& c) {
  return 0.5 * ((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y));
}

std::pair<int, int> edge_key(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

}  // namespace

double Mesh::triangle_area(int t) const {
  const auto& tri = triangles[t];
  return signed_area(vertices[tri[0]], vertices[tri[1]], vertices[tri[2]]);
}

double Mesh::total_area() const {
  double s = 0.0;
  for (int t = 0; t < n_triangles(); ++t) s += triangle_area(t);
  return s;
}

void Mesh::validate() const {
  if (vertices.empty() || triangles.empty())
    throw std::runtime_error("mesh: empty vertex or triangle list");
  const int nv = n_vertices();
  for (const auto& tri : triangles)
    for (int v : tri)
      if (v < 0 || v >= nv) throw std::runtime_error("mesh: triangle vertex id out of range");
  for (const auto& e : boundary_edges)
    if (e.a < 0 || e.a >= nv || e.b < 0 || e.b >= nv)
      throw std::runtime_error("mesh: boundary edge vertex id out of range");
  for (int t = 0; t < n_triangles(); ++t)
    if (!(triangle_area(t) > 0.0))
      throw std::runtime_error("mesh: nonpositive triangle area (orientation?)");

  // Edge incidence: interior edges have two triangles, boundary edges one.
  std::map<std::pair<int, int>, int> count;
  for (const auto& tri : triangles) {
    ++count[edge_key(tri[0], tri[1])];
    ++count[edge_key(tri[1], tri[2])];
    ++count[edge_key(tri[2], tri[0])];
  }
  std::set<std::pair<int, int>> listed;
  for (const auto& e : boundary_edges) {
    if (!listed.insert(edge_key(e.a, e.b)).second)
      throw std::runtime_error("mesh: duplicate boundary edge");
  }
  for (const auto& [key, c] : count) {
    if (c > 2) throw std::runtime_error("mesh: edge shared by more than two triangles");
    const bool on_boundary = listed.count(key) > 0;
    if (c == 1 && !on_boundary)
      throw std::runtime_error("mesh: hanging edge not listed as boundary");
    if (c == 2 && on_boundary)
      throw std::runtime_error("mesh: interior edge listed as boundary");
  }
  for (const auto& key : listed)
    if (!count.count(key)) throw std::runtime_error("mesh: boundary edge not in any triangle");
}

Mesh unit_square_mesh(int n) {
  if (n < 1) throw std::invalid_argument("unit_square_mesh: n must be >= 1");
  Mesh m;
  const auto id = [n](int i, int j) { return j * (n + 1) + i; };
  m.vertices.resize((n + 1) * (n + 1));
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i)
      m.vertices[id(i, j)] = {static_cast<double>(i) / n, static_cast<double>(j) / n};

  m.triangles.reserve(2 * n * n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const int v00 = id(i, j), v10 = id(i + 1, j);
      const int v01 = id(i, j + 1), v11 = id(i + 1, j + 1);
      m.triangles.push_back({v00, v10, v11});  // below the up-diagonal
      m.triangles.push_back({v00, v11, v01});  // above it
    }

  for (int i = 0; i < n; ++i) m.boundary_edges.push_back({id(i, 0), id(i + 1, 0), 1});
  for (int j = 0; j < n; ++j) m.boundary_edges.push_back({id(n, j), id(n, j + 1), 2});
  for (int i = 0; i < n; ++i) m.boundary_edges.push_back({id(i, n), id(i + 1, n), 3});
  for (int j = 0; j < n; ++j) m.boundary_edges.push_back({id(0, j), id(0, j + 1), 4});
  return m;
}

Mesh refine_uniform(const Mesh& m) {
  Mesh f;
  f.vertices = m.vertices;
  std::map<std::pair<int, int>, int> midpoint;
  const auto mid = [&](int a, int b) {
    const auto key = edge_key(a, b);
    auto it = midpoint.find(key);
    if (it != midpoint.end()) return it->second;
    const int idx = static_cast<int>(f.vertices.size());
    f.vertices.push_back({0.5 * (m.vertices[a].x + m.vertices[b].x),
                          0.5 * (m.vertices[a].y + m.vertices[b].y)});
    midpoint.emplace(key, idx);
    return idx;
  };

  f.triangles.reserve(4 * m.triangles.size());
  for (const auto& tri : m.triangles) {
    const int a = tri[0], b = tri[1], c = tri[2];
    const int mab = mid(a, b), mbc = mid(b, c), mca = mid(c, a);
    f.triangles.push_back({a, mab, mca});
    f.triangles.push_back({mab, b, mbc});
    f.triangles.push_back({mca, mbc, c});
    f.triangles.push_back({mab, mbc, mca});
  }
  for (const auto& e : m.boundary_edges) {
    const int mm = mid(e.a, e.b);
    f.boundary_edges.push_back({e.a, mm, e.marker});
    f.boundary_edges.push_back({mm, e.b, e.marker});
  }
  return f;
}

std::vector<int> boundary_vertices(const Mesh& m) {
  std::set<int> s;
  for (const auto& e : m.boundary_edges) {
    s.insert(e.a);
    s.insert(e.b);
  }
  return {s.begin(), s.end()};
}

Mesh load_mesh(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_mesh: cannot open " + path.string());
  std::string kw1, kw2, kw3;
  int nv = 0, nt = 0, nb = 0;
  in >> kw1 >> nv >> kw2 >> nt >> kw3 >> nb;
  if (kw1 != "vertices" || kw2 != "triangles" || kw3 != "boundary")
    throw std::runtime_error("load_mesh: bad header in " + path.string());
  if (nv <= 0 || nt <= 0 || nb < 0)
    throw std::runtime_error("load_mesh: bad counts in " + path.string());
  Mesh m;
  m.vertices.resize(nv);
  for (auto& v : m.vertices) in >> v.x >> v.y;
  m.triangles.resize(nt);
  for (auto& t : m.triangles) in >> t[0] >> t[1] >> t[2];
  m.boundary_edges.resize(nb);
  for (auto& e : m.boundary_edges) in >> e.a >> e.b >> e.marker;
  if (!in) throw std::runtime_error("load_mesh: truncated file " + path.string());

  // Normalize orientation before validating.
  for (auto& t : m.triangles) {
    if (signed_area(m.vertices[t[0]], m.vertices[t[1]], m.vertices[t[2]]) < 0.0)
      std::swap(t[1], t[2]);
  }
  m.validate();
  return m;
}

void save_mesh(const Mesh& m, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_mesh: cannot open " + path.string());
  out.precision(17);
  out << "vertices " << m.n_vertices() << " triangles " << m.n_triangles()
      << " boundary " << m.boundary_edges.size() << "\n";
  for (const auto& v : m.vertices) out << v.x << " " << v.y << "\n";
  for (const auto& t : m.triangles) out << t[0] << " " << t[1] << " " << t[2] << "\n";
  for (const auto& e : m.boundary_edges) out << e.a << " " << e.b << " " << e.marker << "\n";
}

}  // namespace oldroyd
