#pragma once

#include <array>
#include <cmath>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pdwg {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }

/// Geometry of one triangle together with the orientation data needed by the
/// weak-function machinery. Local edge i is the edge opposite local vertex i.
/// Each edge carries its global normal n_e; the outward normal of the triangle
/// on edge i is edge_signs[i] * edge_normals[i].
struct ElementGeometry {
  std::array<Point, 3> vertices;
  // Endpoints in the global orientation (lower global vertex index first).
  std::array<std::array<Point, 2>, 3> edge_endpoints;
  std::array<Point, 3> edge_normals;
  std::array<int, 3> edge_signs;
  std::array<double, 3> edge_lengths;
  double area = 0.0;
  double diameter = 0.0;
  Point centroid;

  Point outward_normal(int i) const { return static_cast<double>(edge_signs[i]) * edge_normals[i]; }
  // Point on edge i at parameter t in [0,1] along the global orientation.
  Point edge_point(int i, double t) const {
    return edge_endpoints[i][0] + t * (edge_endpoints[i][1] - edge_endpoints[i][0]);
  }
};

/// Builds the geometry of a counterclockwise triangle. vertex_ids fix the
/// global edge orientation; for a standalone triangle pass {0, 1, 2}.
/// Throws std::invalid_argument for degenerate or clockwise input.
ElementGeometry make_element_geometry(const std::array<Point, 3>& vertices,
                                      const std::array<int, 3>& vertex_ids = {0, 1, 2});

/// Rotates the unit tangent from a to b by -90 degrees.
Point edge_normal(Point a, Point b);

struct Edge {
  std::array<int, 2> vertices;   // vertices[0] < vertices[1]
  std::array<int, 2> triangles;  // triangles[1] == -1 on the boundary
  Point normal;
  double length = 0.0;

  bool on_boundary() const { return triangles[1] < 0; }
};

/// Conforming triangulation with oriented edges. Immutable once built.
class Mesh {
public:
  Mesh(int subdivisions, std::vector<Point> vertices, std::vector<std::array<int, 3>> triangles);

  int subdivisions() const { return subdivisions_; }
  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int num_triangles() const { return static_cast<int>(triangles_.size()); }
  // P2 nodes: vertices first, then one midpoint per edge.
  int num_p2_nodes() const { return num_vertices() + num_edges(); }

  const std::vector<Point>& vertices() const { return vertices_; }
  const Point& vertex(int v) const { return vertices_[v]; }
  const std::array<int, 3>& triangle(int t) const { return triangles_[t]; }
  const Edge& edge(int e) const { return edges_[e]; }
  const std::array<int, 3>& triangle_edges(int t) const { return triangle_edges_[t]; }
  const std::array<int, 3>& edge_signs(int t) const { return edge_signs_[t]; }
  double area(int t) const { return geometry_[t].area; }
  double diameter(int t) const { return geometry_[t].diameter; }
  const ElementGeometry& geometry(int t) const { return geometry_[t]; }

  Point p2_node(int node) const;
  // Global P2 node numbers of triangle t: 3 vertices, then the midpoints of
  // local edges 0, 1, 2.
  std::array<int, 6> p2_nodes(int t) const;

private:
  int subdivisions_;
  std::vector<Point> vertices_;
  std::vector<std::array<int, 3>> triangles_;
  std::vector<Edge> edges_;
  std::vector<std::array<int, 3>> triangle_edges_;
  std::vector<std::array<int, 3>> edge_signs_;
  std::vector<ElementGeometry> geometry_;
};

/// n x n squares, each cut by its negative-slope diagonal (top-left to
/// bottom-right corner) into two counterclockwise triangles.
Mesh build_uniform_unit_square(int n);

enum class Side { bottom, top, left, right };

Side parse_side(std::string_view name);
std::string_view to_string(Side side);

/// A side of the unit square, or an axis-aligned piece [begin, end] of it
/// measured along the side's free coordinate, carrying boundary-data flags.
struct BoundarySegmentSpec {
  Side side = Side::bottom;
  double begin = 0.0;
  double end = 1.0;
  bool dirichlet = false;
  bool neumann = false;
};

struct EdgeTag {
  bool dirichlet = false;
  bool neumann = false;
};

/// Flags per edge. Interior edges carry no flags. Throws std::invalid_argument
/// when a segment endpoint is not a multiple of 1/n.
std::vector<EdgeTag> classify_boundary(const Mesh& mesh, std::span<const BoundarySegmentSpec> specs);

}  // namespace pdwg
