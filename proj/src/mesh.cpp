#include "pdwg/mesh.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>

namespace pdwg {

Point edge_normal(Point a, Point b) {
  const Point t = b - a;
  const double len = norm(t);
  return {t.y / len, -t.x / len};
}

ElementGeometry make_element_geometry(const std::array<Point, 3>& vertices,
                                      const std::array<int, 3>& vertex_ids) {
  ElementGeometry g;
  g.vertices = vertices;
  const Point d1 = vertices[1] - vertices[0];
  const Point d2 = vertices[2] - vertices[0];
  g.area = 0.5 * (d1.x * d2.y - d1.y * d2.x);
  if (!(g.area > 0.0)) {
    throw std::invalid_argument("make_element_geometry: degenerate or clockwise triangle");
  }
  g.centroid = (1.0 / 3.0) * (vertices[0] + vertices[1] + vertices[2]);
  g.diameter = 0.0;
  for (int i = 0; i < 3; ++i) {
    // Counterclockwise traversal of local edge i runs from vertex i+1 to i+2.
    const int p = (i + 1) % 3;
    const int q = (i + 2) % 3;
    const bool forward = vertex_ids[p] < vertex_ids[q];
    const Point a = forward ? vertices[p] : vertices[q];
    const Point b = forward ? vertices[q] : vertices[p];
    g.edge_endpoints[i] = {a, b};
    g.edge_normals[i] = edge_normal(a, b);
    g.edge_signs[i] = forward ? 1 : -1;
    g.edge_lengths[i] = norm(b - a);
    g.diameter = std::max(g.diameter, g.edge_lengths[i]);
  }
  return g;
}

Mesh::Mesh(int subdivisions, std::vector<Point> vertices, std::vector<std::array<int, 3>> triangles)
    : subdivisions_(subdivisions), vertices_(std::move(vertices)), triangles_(std::move(triangles)) {
  std::map<std::pair<int, int>, int> lookup;
  triangle_edges_.resize(triangles_.size());
  edge_signs_.resize(triangles_.size());
  geometry_.reserve(triangles_.size());

  for (int t = 0; t < num_triangles(); ++t) {
    const auto& tri = triangles_[t];
    for (int i = 0; i < 3; ++i) {
      const int p = tri[(i + 1) % 3];
      const int q = tri[(i + 2) % 3];
      const auto key = std::minmax(p, q);
      auto [it, inserted] = lookup.try_emplace({key.first, key.second}, num_edges());
      if (inserted) {
        Edge e;
        e.vertices = {key.first, key.second};
        e.triangles = {t, -1};
        e.normal = edge_normal(vertices_[key.first], vertices_[key.second]);
        e.length = norm(vertices_[key.second] - vertices_[key.first]);
        edges_.push_back(e);
      } else {
        Edge& e = edges_[it->second];
        if (e.triangles[1] >= 0) {
          throw std::invalid_argument("Mesh: edge shared by more than two triangles");
        }
        e.triangles[1] = t;
      }
      triangle_edges_[t][i] = it->second;
      edge_signs_[t][i] = p < q ? 1 : -1;
    }
    geometry_.push_back(make_element_geometry({vertices_[tri[0]], vertices_[tri[1]], vertices_[tri[2]]}, tri));
  }
}

Point Mesh::p2_node(int node) const {
  if (node < num_vertices()) {
    return vertices_[node];
  }
  const Edge& e = edges_[node - num_vertices()];
  return 0.5 * (vertices_[e.vertices[0]] + vertices_[e.vertices[1]]);
}

std::array<int, 6> Mesh::p2_nodes(int t) const {
  const auto& tri = triangles_[t];
  const auto& edges = triangle_edges_[t];
  const int nv = num_vertices();
  return {tri[0], tri[1], tri[2], nv + edges[0], nv + edges[1], nv + edges[2]};
}

Mesh build_uniform_unit_square(int n) {
  if (n < 1) {
    throw std::invalid_argument("build_uniform_unit_square: n must be >= 1");
  }
  std::vector<Point> vertices;
  vertices.reserve(static_cast<std::size_t>((n + 1) * (n + 1)));
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= n; ++i) {
      vertices.push_back({static_cast<double>(i) / n, static_cast<double>(j) / n});
    }
  }
  auto id = [n](int i, int j) { return j * (n + 1) + i; };

  std::vector<std::array<int, 3>> triangles;
  triangles.reserve(static_cast<std::size_t>(2 * n * n));
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int bl = id(i, j);
      const int br = id(i + 1, j);
      const int tl = id(i, j + 1);
      const int tr = id(i + 1, j + 1);
      triangles.push_back({bl, br, tl});
      triangles.push_back({br, tr, tl});
    }
  }
  return Mesh(n, std::move(vertices), std::move(triangles));
}

Side parse_side(std::string_view name) {
  if (name == "bottom") return Side::bottom;
  if (name == "top") return Side::top;
  if (name == "left") return Side::left;
  if (name == "right") return Side::right;
  throw std::invalid_argument("unknown boundary side: " + std::string(name));
}

std::string_view to_string(Side side) {
  switch (side) {
    case Side::bottom: return "bottom";
    case Side::top: return "top";
    case Side::left: return "left";
    case Side::right: return "right";
  }
  return "?";
}

namespace {

constexpr double kGeomTol = 1e-12;

bool on_side(Point p, Side side) {
  switch (side) {
    case Side::bottom: return std::abs(p.y) < kGeomTol;
    case Side::top: return std::abs(p.y - 1.0) < kGeomTol;
    case Side::left: return std::abs(p.x) < kGeomTol;
    case Side::right: return std::abs(p.x - 1.0) < kGeomTol;
  }
  return false;
}

double along_side(Point p, Side side) {
  return (side == Side::bottom || side == Side::top) ? p.x : p.y;
}

void check_aligned(double value, int n) {
  const double scaled = value * n;
  if (std::abs(scaled - std::round(scaled)) > 1e-9) {
    throw std::invalid_argument("classify_boundary: segment endpoint " + std::to_string(value) +
                                " is not a multiple of 1/" + std::to_string(n));
  }
}

}  // namespace

std::vector<EdgeTag> classify_boundary(const Mesh& mesh, std::span<const BoundarySegmentSpec> specs) {
  const int n = mesh.subdivisions();
  for (const auto& s : specs) {
    if (!(s.begin >= 0.0 && s.end <= 1.0 && s.begin < s.end)) {
      throw std::invalid_argument("classify_boundary: segment interval must satisfy 0 <= begin < end <= 1");
    }
    check_aligned(s.begin, n);
    check_aligned(s.end, n);
  }

  std::vector<EdgeTag> tags(static_cast<std::size_t>(mesh.num_edges()));
  for (int e = 0; e < mesh.num_edges(); ++e) {
    const Edge& edge = mesh.edge(e);
    if (!edge.on_boundary()) {
      continue;
    }
    const Point a = mesh.vertex(edge.vertices[0]);
    const Point b = mesh.vertex(edge.vertices[1]);
    for (const auto& s : specs) {
      if (!on_side(a, s.side) || !on_side(b, s.side)) {
        continue;
      }
      const double ta = along_side(a, s.side);
      const double tb = along_side(b, s.side);
      const bool inside = std::min(ta, tb) >= s.begin - kGeomTol && std::max(ta, tb) <= s.end + kGeomTol;
      if (inside) {
        tags[e].dirichlet = tags[e].dirichlet || s.dirichlet;
        tags[e].neumann = tags[e].neumann || s.neumann;
      }
    }
  }
  return tags;
}

}  // namespace pdwg
