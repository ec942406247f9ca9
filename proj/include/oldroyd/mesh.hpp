#pragma once

// Conforming triangle meshes of polygonal domains.
//
// Storage is the classic triple: vertex coordinates, triangle vertex ids, and
// marked boundary edges.  All triangles are kept counterclockwise; load()
// normalizes orientation so downstream assembly can assume positive Jacobians.

#include <array>
#include <filesystem>
#include <string>
#include <vector>

namespace oldroyd {

struct Vec2 {
  double x = 0.0, y = 0.0;
};

struct BoundaryEdge {
  int a = 0, b = 0;  // vertex ids
  int marker = 0;    // user tag (sides of the built-in square use 1..4)
};

struct Mesh {
  std::vector<Vec2> vertices;
  std::vector<std::array<int, 3>> triangles;  // CCW vertex ids
  std::vector<BoundaryEdge> boundary_edges;

  int n_vertices() const { return static_cast<int>(vertices.size()); }
  int n_triangles() const { return static_cast<int>(triangles.size()); }

  double triangle_area(int t) const;
  double total_area() const;

  // Structural checks: nonempty, indices in range, positive areas, every edge
  // shared by at most two triangles, and the boundary edge list exactly the
  // edges with a single incident triangle.  Throws std::runtime_error.
  void validate() const;
};

// Structured n x n triangulation of the unit square: (n+1)^2 vertices, 2 n^2
// right triangles (each cell split along its up-diagonal), 4n boundary edges
// with side markers bottom=1, right=2, top=3, left=4.
Mesh unit_square_mesh(int n);

// Red refinement: every triangle is split into four via edge midpoints.
// Vertex count becomes n_v + n_edges; areas are preserved; boundary markers
// are inherited by the two child edges.
Mesh refine_uniform(const Mesh& m);

// Sorted ids of vertices incident to at least one boundary edge.
std::vector<int> boundary_vertices(const Mesh& m);

// Plain text format:
//   vertices N triangles M boundary K
//   x y                 (N lines)
//   v0 v1 v2            (M lines)
//   a b marker          (K lines)
// load() flips negatively oriented triangles and validates.
Mesh load_mesh(const std::filesystem::path& path);
void save_mesh(const Mesh& m, const std::filesystem::path& path);

}  // namespace oldroyd
