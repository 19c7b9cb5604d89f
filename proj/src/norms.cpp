#include "pdwg/norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pdwg/assembly.hpp"

namespace pdwg {

ElementWeakFunction ProjectedExact::on_element(const Mesh& mesh, int t) const {
  ElementWeakFunction v;
  v.v0 = q0[t];
  const auto& edges = mesh.triangle_edges(t);
  for (int i = 0; i < 3; ++i) {
    v.vb[i] = qb[edges[i]];
    v.vn[i] = qn[edges[i]];
  }
  return v;
}

ProjectedExact project_exact(const ManufacturedSolution& u, const Mesh& mesh, const QuadratureOptions& quad) {
  const TriangleQuadrature tri = triangle_quadrature(quad.triangle_degree);
  const LineQuadrature line = gauss_legendre(quad.edge_points);
  ProjectedExact out;
  out.q0.reserve(static_cast<std::size_t>(mesh.num_triangles()));
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    out.q0.push_back(project_L2_element(u.u, mesh.geometry(t), 2, tri));
  }
  out.flux.resize(2 * mesh.num_edges());
  for (int e = 0; e < mesh.num_edges(); ++e) {
    const Edge& edge = mesh.edge(e);
    const Point a = mesh.vertex(edge.vertices[0]);
    const Point b = mesh.vertex(edge.vertices[1]);
    const Point n = edge.normal;
    out.qb.push_back(project_L2_edge(u.u, a, b, 2, line));
    out.qn.push_back(project_L2_edge([&](Point p) { return u.normal_derivative(p, n); }, a, b, 1, line));
    out.flux[2 * e] = out.qn.back()(0.0);
    out.flux[2 * e + 1] = out.qn.back()(1.0);
  }
  return out;
}

ErrorReport error_norms(const Mesh& mesh, std::span<const EdgeTag> tags, const Solution& solution,
                        const ProjectedExact& qhu, const QuadratureOptions& quad) {
  if (solution.u0.size() != mesh.num_p2_nodes() || solution.un.size() != 2 * mesh.num_edges() ||
      solution.lambda.size() != mesh.num_triangles() || static_cast<int>(qhu.q0.size()) != mesh.num_triangles() ||
      static_cast<int>(qhu.qn.size()) != mesh.num_edges()) {
    throw std::invalid_argument("error_norms: solution and projection do not match the mesh");
  }
  const TriangleQuadrature tri = triangle_quadrature(quad.triangle_degree);
  const LineQuadrature line = gauss_legendre(quad.edge_points);
  const std::span<const double> u0(solution.u0.data(), static_cast<std::size_t>(solution.u0.size()));
  const std::span<const double> un(solution.un.data(), static_cast<std::size_t>(solution.un.size()));

  ErrorReport r;
  double l2_sq = 0.0;
  double h1_sq = 0.0;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const ElementGeometry& geom = mesh.geometry(t);
    const ElementWeakFunction e = element_weak_function(mesh, t, u0, un) - qhu.on_element(mesh, t);

    const double lap = e.v0.laplacian(geom.centroid);
    r.laplacian_sq += lap * lap * geom.area;
    r.stabilizer_sq += local_stabilizer(e, e, geom);

    for (int q = 0; q < tri.size(); ++q) {
      const double w = 2.0 * geom.area * tri.weights[q];
      const double v = e.v0(map_point(geom, tri.points[q]));
      l2_sq += w * v * v;
      r.l1 += w * std::abs(v);
      r.linf = std::max(r.linf, std::abs(v));
    }
    for (const Point& p : p2::nodes(geom)) {
      r.linf = std::max(r.linf, std::abs(e.v0(p)));
    }

    for (int i = 0; i < 3; ++i) {
      const double len = geom.edge_lengths[i];
      double sq = 0.0;
      double abs = 0.0;
      for (int q = 0; q < line.size(); ++q) {
        const double v = e.vn[i](line.points[q]);
        sq += line.weights[q] * len * v * v;
        abs += line.weights[q] * len * std::abs(v);
      }
      h1_sq += geom.diameter * sq;
      r.w11 += geom.diameter * abs;
    }
  }
  r.l2 = std::sqrt(l2_sq);
  r.h1 = std::sqrt(h1_sq);
  r.h2 = std::sqrt(r.laplacian_sq + std::max(0.0, r.stabilizer_sq));
  const std::span<const double> lambda(solution.lambda.data(), static_cast<std::size_t>(solution.lambda.size()));
  r.lambda0h = lambda_norm(lambda, mesh, tags);
  return r;
}

double lambda_jump(const Mesh& mesh, std::span<const double> lambda, int e) {
  const Edge& edge = mesh.edge(e);
  const int t0 = edge.triangles[0];
  int sign0 = 0;
  const auto& edges0 = mesh.triangle_edges(t0);
  for (int i = 0; i < 3; ++i) {
    if (edges0[i] == e) sign0 = mesh.edge_signs(t0)[i];
  }
  if (edge.on_boundary()) {
    return sign0 * lambda[t0];
  }
  const int t1 = edge.triangles[1];
  return sign0 > 0 ? lambda[t0] - lambda[t1] : lambda[t1] - lambda[t0];
}

double lambda_norm(std::span<const double> lambda, const Mesh& mesh, std::span<const EdgeTag> tags) {
  double s = 0.0;
  for (int e = 0; e < mesh.num_edges(); ++e) {
    if (tags[e].neumann) continue;
    const double h = mesh.edge(e).length;
    const double j = lambda_jump(mesh, lambda, e);
    // h_e * ||[lambda]||_e^2 with [lambda] constant on e.
    s += h * (h * j * j);
  }
  return std::sqrt(s);
}

}  // namespace pdwg
