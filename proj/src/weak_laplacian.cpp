#include "pdwg/weak_laplacian.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <stdexcept>

namespace pdwg {

ElementWeakFunction& ElementWeakFunction::operator-=(const ElementWeakFunction& other) {
  v0 -= other.v0;
  for (int i = 0; i < 3; ++i) {
    vb[i] -= other.vb[i];
    vn[i] -= other.vn[i];
  }
  return *this;
}

ElementWeakFunction operator-(ElementWeakFunction a, const ElementWeakFunction& b) {
  a -= b;
  return a;
}

ElementWeakFunction zero_weak_function(const ElementGeometry& geom, int k) {
  ElementWeakFunction v;
  v.v0 = ElementPolynomial(k, geom);
  for (int i = 0; i < 3; ++i) {
    const auto& [a, b] = geom.edge_endpoints[i];
    v.vb[i] = EdgePolynomial(k, a, b);
    v.vn[i] = EdgePolynomial(std::max(k - 1, 0), a, b);
  }
  return v;
}

ElementWeakFunction weak_function_from_polynomial(const ElementPolynomial& v0, const ElementGeometry& geom) {
  const int k = v0.degree();
  ElementWeakFunction v;
  v.v0 = v0;
  const LineQuadrature rule = line_quadrature(2 * k + 1);
  for (int i = 0; i < 3; ++i) {
    const auto& [a, b] = geom.edge_endpoints[i];
    const Point n = geom.edge_normals[i];
    v.vb[i] = project_L2_edge(v0, a, b, k, rule);
    v.vn[i] = project_L2_edge([&](Point p) { return dot(v0.gradient(p), n); }, a, b, std::max(k - 1, 0), rule);
  }
  return v;
}

ElementPolynomial discrete_weak_laplacian(const ElementWeakFunction& v, const ElementGeometry& geom, int r) {
  if (r < 0) {
    throw std::invalid_argument("discrete_weak_laplacian: r must be non-negative");
  }
  if (!(geom.area > 0.0)) {
    throw std::invalid_argument("discrete_weak_laplacian: degenerate element");
  }
  ElementPolynomial p(r, geom);
  const int m = p.size();
  const int k0 = v.v0.degree();
  int kb = 0;
  int kn = 0;
  for (int i = 0; i < 3; ++i) {
    kb = std::max(kb, v.vb[i].degree());
    kn = std::max(kn, v.vn[i].degree());
  }
  const TriangleQuadrature tri = triangle_quadrature(std::min(kMaxTriangleDegree, std::max(2 * r, k0 + r)));
  const LineQuadrature line = line_quadrature(std::max(kb + r, kn + r));

  Eigen::MatrixXd mass = Eigen::MatrixXd::Zero(m, m);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
  std::vector<double> phi(static_cast<std::size_t>(m));
  std::vector<double> lap(static_cast<std::size_t>(m));
  std::vector<Point> grad(static_cast<std::size_t>(m));

  for (int q = 0; q < tri.size(); ++q) {
    const Point x = map_point(geom, tri.points[q]);
    const double w = 2.0 * geom.area * tri.weights[q];
    p.basis_values(x, phi);
    p.basis_laplacians(x, lap);
    const double v0x = v.v0(x);
    for (int i = 0; i < m; ++i) {
      rhs[i] += w * v0x * lap[i];
      for (int j = 0; j < m; ++j) {
        mass(i, j) += w * phi[i] * phi[j];
      }
    }
  }

  for (int e = 0; e < 3; ++e) {
    const Point n_out = geom.outward_normal(e);
    const double sign = geom.edge_signs[e];
    const double len = geom.edge_lengths[e];
    for (int q = 0; q < line.size(); ++q) {
      const double t = line.points[q];
      const Point x = geom.edge_point(e, t);
      const double w = len * line.weights[q];
      p.basis_values(x, phi);
      p.basis_gradients(x, grad);
      const double vb = v.vb[e](t);
      const double vn_out = sign * v.vn[e](t);
      for (int i = 0; i < m; ++i) {
        rhs[i] += w * (-vb * dot(grad[i], n_out) + vn_out * phi[i]);
      }
    }
  }

  const Eigen::VectorXd c = mass.ldlt().solve(rhs);
  for (int i = 0; i < m; ++i) {
    p.coefficients()[i] = c[i];
  }
  return p;
}

double weak_laplacian_c0_k2(const std::array<std::array<double, 2>, 3>& flux, const ElementGeometry& geom) {
  if (!(geom.area > 0.0)) {
    throw std::invalid_argument("weak_laplacian_c0_k2: degenerate element");
  }
  double s = 0.0;
  for (int e = 0; e < 3; ++e) {
    s += geom.edge_signs[e] * 0.5 * geom.edge_lengths[e] * (flux[e][0] + flux[e][1]);
  }
  return s / geom.area;
}

double local_stabilizer(const ElementWeakFunction& sigma, const ElementWeakFunction& v, const ElementGeometry& geom) {
  int deg = std::max(sigma.v0.degree(), v.v0.degree());
  for (int i = 0; i < 3; ++i) {
    deg = std::max({deg, sigma.vb[i].degree(), v.vb[i].degree(), sigma.vn[i].degree() + 1, v.vn[i].degree() + 1});
  }
  const LineQuadrature line = line_quadrature(2 * deg);
  const double h = geom.diameter;
  double trace_term = 0.0;
  double flux_term = 0.0;
  for (int e = 0; e < 3; ++e) {
    // Both factors flip sign together under n_out = s n_e, so n_e is used.
    const Point n = geom.edge_normals[e];
    const double len = geom.edge_lengths[e];
    for (int q = 0; q < line.size(); ++q) {
      const double t = line.points[q];
      const Point x = geom.edge_point(e, t);
      const double w = len * line.weights[q];
      const double ds = sigma.v0(x) - sigma.vb[e](t);
      const double dv = v.v0(x) - v.vb[e](t);
      const double fs = dot(sigma.v0.gradient(x), n) - sigma.vn[e](t);
      const double fv = dot(v.v0.gradient(x), n) - v.vn[e](t);
      trace_term += w * ds * dv;
      flux_term += w * fs * fv;
    }
  }
  return trace_term / (h * h * h) + flux_term / h;
}

}  // namespace pdwg
