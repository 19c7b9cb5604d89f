#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "pdwg/mesh.hpp"
#include "pdwg/quadrature.hpp"

namespace pdwg {

using ScalarField = std::function<double(Point)>;

/// Polynomial of total degree <= k on a triangle, in monomials of the scaled
/// coordinates ((x - xc)/h, (y - yc)/h). Basis order is by total degree, then
/// by increasing power of y: 1, X, Y, X^2, XY, Y^2, ...
class ElementPolynomial {
public:
  ElementPolynomial() = default;
  ElementPolynomial(int degree, Point center, double scale);
  // Zero polynomial centered at the element centroid, scaled by its diameter.
  ElementPolynomial(int degree, const ElementGeometry& geom);

  static int dimension(int degree) { return (degree + 1) * (degree + 2) / 2; }

  int degree() const { return degree_; }
  int size() const { return static_cast<int>(coeffs_.size()); }
  Point center() const { return center_; }
  double scale() const { return scale_; }
  std::vector<double>& coefficients() { return coeffs_; }
  const std::vector<double>& coefficients() const { return coeffs_; }

  double operator()(Point p) const;
  Point gradient(Point p) const;
  double laplacian(Point p) const;

  void basis_values(Point p, std::span<double> out) const;
  void basis_gradients(Point p, std::span<Point> out) const;
  void basis_laplacians(Point p, std::span<double> out) const;

  ElementPolynomial& operator+=(const ElementPolynomial& other);
  ElementPolynomial& operator-=(const ElementPolynomial& other);
  ElementPolynomial& operator*=(double s);

private:
  int degree_ = 0;
  Point center_;
  double scale_ = 1.0;
  std::vector<double> coeffs_;
};

/// Polynomial on an edge in powers of t in [0, 1], where t runs from
/// endpoint a to endpoint b (the edge's global orientation).
class EdgePolynomial {
public:
  EdgePolynomial() = default;
  EdgePolynomial(int degree, Point a, Point b);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  Point start() const { return a_; }
  Point end() const { return b_; }
  double length() const { return norm(b_ - a_); }
  std::vector<double>& coefficients() { return coeffs_; }
  const std::vector<double>& coefficients() const { return coeffs_; }

  double operator()(double t) const;
  double integral() const;

  EdgePolynomial& operator+=(const EdgePolynomial& other);
  EdgePolynomial& operator-=(const EdgePolynomial& other);
  EdgePolynomial& operator*=(double s);

private:
  Point a_;
  Point b_;
  std::vector<double> coeffs_{0.0};
};

inline Point map_point(const ElementGeometry& g, const std::array<double, 3>& bary) {
  return bary[0] * g.vertices[0] + bary[1] * g.vertices[1] + bary[2] * g.vertices[2];
}

double integrate_element(const ElementGeometry& g, const TriangleQuadrature& rule, const ScalarField& f);
double integrate_edge(Point a, Point b, const LineQuadrature& rule, const std::function<double(double)>& f);

/// Q0 / curly-Q_h: L2 projection onto P_k(T) through the element mass system.
ElementPolynomial project_L2_element(const ScalarField& f, const ElementGeometry& geom, int k,
                                     const TriangleQuadrature& rule);
ElementPolynomial project_L2_element(const ScalarField& f, const ElementGeometry& geom, int k);

/// Qb / Qn: L2 projection onto P_degree(e).
EdgePolynomial project_L2_edge(const ScalarField& g, Point a, Point b, int degree, const LineQuadrature& rule);
EdgePolynomial project_L2_edge(const ScalarField& g, Point a, Point b, int degree);
// Same projection from values already sampled at the rule's points.
EdgePolynomial project_L2_edge_samples(std::span<const double> samples, Point a, Point b, int degree,
                                       const LineQuadrature& rule);

/// Quadratic Lagrange basis on a triangle. Local nodes: the three vertices,
/// then the midpoints of local edges 0, 1, 2 (edge i is opposite vertex i).
namespace p2 {
std::array<double, 3> barycentric(const ElementGeometry& g, Point p);
std::array<double, 6> values(const ElementGeometry& g, Point p);
std::array<Point, 6> gradients(const ElementGeometry& g, Point p);
std::array<double, 6> laplacians(const ElementGeometry& g);
std::array<Point, 6> nodes(const ElementGeometry& g);
// Converts nodal values to the scaled monomial representation.
ElementPolynomial to_monomials(const ElementGeometry& g, const std::array<double, 6>& nodal);
}  // namespace p2

struct NodalValue {
  int node = 0;
  double value = 0.0;
};

/// P2 nodes on the closure of the Dirichlet edges, in edge-index order and
/// within an edge as (lower vertex, midpoint, upper vertex); each node once.
std::vector<int> dirichlet_nodes(const Mesh& mesh, std::span<const EdgeTag> tags);

/// g1 evaluated at every P2 node returned by dirichlet_nodes, same order.
std::vector<NodalValue> interpolate_dirichlet_nodes(const ScalarField& g1, const Mesh& mesh,
                                                    std::span<const EdgeTag> tags);

}  // namespace pdwg
