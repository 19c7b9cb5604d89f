#include "pdwg/polynomial.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace pdwg {

namespace {

// Powers 0..degree of v.
std::vector<double> powers(double v, int degree) {
  std::vector<double> out(static_cast<std::size_t>(degree + 1), 1.0);
  for (int i = 1; i <= degree; ++i) {
    out[i] = out[i - 1] * v;
  }
  return out;
}

void require_same_shape(const ElementPolynomial& a, const ElementPolynomial& b) {
  if (a.degree() != b.degree() || a.center().x != b.center().x || a.center().y != b.center().y ||
      a.scale() != b.scale()) {
    throw std::invalid_argument("ElementPolynomial: operands live in different bases");
  }
}

}  // namespace

ElementPolynomial::ElementPolynomial(int degree, Point center, double scale)
    : degree_(degree), center_(center), scale_(scale), coeffs_(static_cast<std::size_t>(dimension(degree)), 0.0) {
  if (degree < 0) {
    throw std::invalid_argument("ElementPolynomial: negative degree");
  }
  if (!(scale > 0.0)) {
    throw std::invalid_argument("ElementPolynomial: scale must be positive");
  }
}

ElementPolynomial::ElementPolynomial(int degree, const ElementGeometry& geom)
    : ElementPolynomial(degree, geom.centroid, geom.diameter) {}

void ElementPolynomial::basis_values(Point p, std::span<double> out) const {
  const auto px = powers((p.x - center_.x) / scale_, degree_);
  const auto py = powers((p.y - center_.y) / scale_, degree_);
  int idx = 0;
  for (int d = 0; d <= degree_; ++d) {
    for (int j = 0; j <= d; ++j) {
      out[idx++] = px[d - j] * py[j];
    }
  }
}

void ElementPolynomial::basis_gradients(Point p, std::span<Point> out) const {
  const auto px = powers((p.x - center_.x) / scale_, degree_);
  const auto py = powers((p.y - center_.y) / scale_, degree_);
  int idx = 0;
  for (int d = 0; d <= degree_; ++d) {
    for (int j = 0; j <= d; ++j) {
      const int a = d - j;
      const int b = j;
      const double gx = a > 0 ? a * px[a - 1] * py[b] : 0.0;
      const double gy = b > 0 ? b * px[a] * py[b - 1] : 0.0;
      out[idx++] = {gx / scale_, gy / scale_};
    }
  }
}

void ElementPolynomial::basis_laplacians(Point p, std::span<double> out) const {
  const auto px = powers((p.x - center_.x) / scale_, degree_);
  const auto py = powers((p.y - center_.y) / scale_, degree_);
  const double h2 = scale_ * scale_;
  int idx = 0;
  for (int d = 0; d <= degree_; ++d) {
    for (int j = 0; j <= d; ++j) {
      const int a = d - j;
      const int b = j;
      const double lxx = a > 1 ? a * (a - 1) * px[a - 2] * py[b] : 0.0;
      const double lyy = b > 1 ? b * (b - 1) * px[a] * py[b - 2] : 0.0;
      out[idx++] = (lxx + lyy) / h2;
    }
  }
}

double ElementPolynomial::operator()(Point p) const {
  std::vector<double> phi(coeffs_.size());
  basis_values(p, phi);
  double s = 0.0;
  for (std::size_t i = 0; i < phi.size(); ++i) {
    s += coeffs_[i] * phi[i];
  }
  return s;
}

Point ElementPolynomial::gradient(Point p) const {
  std::vector<Point> g(coeffs_.size());
  basis_gradients(p, g);
  Point s;
  for (std::size_t i = 0; i < g.size(); ++i) {
    s = s + coeffs_[i] * g[i];
  }
  return s;
}

double ElementPolynomial::laplacian(Point p) const {
  std::vector<double> l(coeffs_.size());
  basis_laplacians(p, l);
  double s = 0.0;
  for (std::size_t i = 0; i < l.size(); ++i) {
    s += coeffs_[i] * l[i];
  }
  return s;
}

ElementPolynomial& ElementPolynomial::operator+=(const ElementPolynomial& other) {
  require_same_shape(*this, other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

ElementPolynomial& ElementPolynomial::operator-=(const ElementPolynomial& other) {
  require_same_shape(*this, other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

ElementPolynomial& ElementPolynomial::operator*=(double s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

EdgePolynomial::EdgePolynomial(int degree, Point a, Point b)
    : a_(a), b_(b), coeffs_(static_cast<std::size_t>(degree + 1), 0.0) {
  if (degree < 0) {
    throw std::invalid_argument("EdgePolynomial: negative degree");
  }
}

double EdgePolynomial::operator()(double t) const {
  double s = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    s = s * t + *it;
  }
  return s;
}

double EdgePolynomial::integral() const {
  double s = 0.0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    s += coeffs_[i] / static_cast<double>(i + 1);
  }
  return s * length();
}

EdgePolynomial& EdgePolynomial::operator+=(const EdgePolynomial& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), 0.0);
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

EdgePolynomial& EdgePolynomial::operator-=(const EdgePolynomial& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), 0.0);
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

EdgePolynomial& EdgePolynomial::operator*=(double s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

double integrate_element(const ElementGeometry& g, const TriangleQuadrature& rule, const ScalarField& f) {
  double s = 0.0;
  for (int q = 0; q < rule.size(); ++q) {
    s += rule.weights[q] * f(map_point(g, rule.points[q]));
  }
  return 2.0 * g.area * s;
}

double integrate_edge(Point a, Point b, const LineQuadrature& rule, const std::function<double(double)>& f) {
  double s = 0.0;
  for (int q = 0; q < rule.size(); ++q) {
    s += rule.weights[q] * f(rule.points[q]);
  }
  return norm(b - a) * s;
}

ElementPolynomial project_L2_element(const ScalarField& f, const ElementGeometry& geom, int k,
                                     const TriangleQuadrature& rule) {
  if (!(geom.area > 0.0)) {
    throw std::invalid_argument("project_L2_element: degenerate element");
  }
  ElementPolynomial p(k, geom);
  const int m = p.size();
  Eigen::MatrixXd mass = Eigen::MatrixXd::Zero(m, m);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
  std::vector<double> phi(static_cast<std::size_t>(m));
  for (int q = 0; q < rule.size(); ++q) {
    const Point x = map_point(geom, rule.points[q]);
    const double w = 2.0 * geom.area * rule.weights[q];
    p.basis_values(x, phi);
    const double fx = f(x);
    for (int i = 0; i < m; ++i) {
      rhs[i] += w * fx * phi[i];
      for (int j = 0; j < m; ++j) {
        mass(i, j) += w * phi[i] * phi[j];
      }
    }
  }
  const Eigen::VectorXd c = mass.ldlt().solve(rhs);
  for (int i = 0; i < m; ++i) {
    p.coefficients()[i] = c[i];
  }
  return p;
}

ElementPolynomial project_L2_element(const ScalarField& f, const ElementGeometry& geom, int k) {
  return project_L2_element(f, geom, k, triangle_quadrature(std::min(kMaxTriangleDegree, std::max(6, 2 * k + 2))));
}

EdgePolynomial project_L2_edge_samples(std::span<const double> samples, Point a, Point b, int degree,
                                       const LineQuadrature& rule) {
  if (!(norm(b - a) > 0.0)) {
    throw std::invalid_argument("project_L2_edge: zero-length edge");
  }
  if (static_cast<int>(samples.size()) != rule.size()) {
    throw std::invalid_argument("project_L2_edge: sample count does not match the rule");
  }
  const int m = degree + 1;
  // The edge length cancels from both sides of the normal equations.
  Eigen::MatrixXd mass(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      mass(i, j) = 1.0 / (i + j + 1);
    }
  }
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
  for (int q = 0; q < rule.size(); ++q) {
    double tp = 1.0;
    for (int i = 0; i < m; ++i) {
      rhs[i] += rule.weights[q] * samples[q] * tp;
      tp *= rule.points[q];
    }
  }
  const Eigen::VectorXd c = mass.ldlt().solve(rhs);
  EdgePolynomial p(degree, a, b);
  for (int i = 0; i < m; ++i) {
    p.coefficients()[i] = c[i];
  }
  return p;
}

EdgePolynomial project_L2_edge(const ScalarField& g, Point a, Point b, int degree, const LineQuadrature& rule) {
  std::vector<double> samples(static_cast<std::size_t>(rule.size()));
  for (int q = 0; q < rule.size(); ++q) {
    samples[q] = g(a + rule.points[q] * (b - a));
  }
  return project_L2_edge_samples(samples, a, b, degree, rule);
}

EdgePolynomial project_L2_edge(const ScalarField& g, Point a, Point b, int degree) {
  return project_L2_edge(g, a, b, degree, gauss_legendre(std::max(4, degree + 2)));
}

namespace p2 {

namespace {

std::array<Point, 3> barycentric_gradients(const ElementGeometry& g) {
  std::array<Point, 3> out;
  for (int i = 0; i < 3; ++i) {
    out[i] = (-g.edge_lengths[i] / (2.0 * g.area)) * g.outward_normal(i);
  }
  return out;
}

}  // namespace

std::array<double, 3> barycentric(const ElementGeometry& g, Point p) {
  const auto grads = barycentric_gradients(g);
  std::array<double, 3> l;
  for (int i = 0; i < 3; ++i) {
    l[i] = 1.0 / 3.0 + dot(grads[i], p - g.centroid);
  }
  return l;
}

std::array<double, 6> values(const ElementGeometry& g, Point p) {
  const auto l = barycentric(g, p);
  std::array<double, 6> v;
  for (int i = 0; i < 3; ++i) {
    v[i] = l[i] * (2.0 * l[i] - 1.0);
    v[3 + i] = 4.0 * l[(i + 1) % 3] * l[(i + 2) % 3];
  }
  return v;
}

std::array<Point, 6> gradients(const ElementGeometry& g, Point p) {
  const auto l = barycentric(g, p);
  const auto gl = barycentric_gradients(g);
  std::array<Point, 6> out;
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3;
    const int k = (i + 2) % 3;
    out[i] = (4.0 * l[i] - 1.0) * gl[i];
    out[3 + i] = 4.0 * (l[k] * gl[j] + l[j] * gl[k]);
  }
  return out;
}

std::array<double, 6> laplacians(const ElementGeometry& g) {
  const auto gl = barycentric_gradients(g);
  std::array<double, 6> out;
  for (int i = 0; i < 3; ++i) {
    out[i] = 4.0 * dot(gl[i], gl[i]);
    out[3 + i] = 8.0 * dot(gl[(i + 1) % 3], gl[(i + 2) % 3]);
  }
  return out;
}

std::array<Point, 6> nodes(const ElementGeometry& g) {
  const auto& v = g.vertices;
  return {v[0], v[1], v[2], 0.5 * (v[1] + v[2]), 0.5 * (v[2] + v[0]), 0.5 * (v[0] + v[1])};
}

ElementPolynomial to_monomials(const ElementGeometry& g, const std::array<double, 6>& nodal) {
  ElementPolynomial p(2, g);
  const auto pts = nodes(g);
  Eigen::Matrix<double, 6, 6> vander;
  Eigen::Matrix<double, 6, 1> rhs;
  std::array<double, 6> phi;
  for (int i = 0; i < 6; ++i) {
    p.basis_values(pts[i], phi);
    for (int j = 0; j < 6; ++j) vander(i, j) = phi[j];
    rhs[i] = nodal[i];
  }
  const Eigen::Matrix<double, 6, 1> c = vander.partialPivLu().solve(rhs);
  for (int j = 0; j < 6; ++j) p.coefficients()[j] = c[j];
  return p;
}

}  // namespace p2

std::vector<int> dirichlet_nodes(const Mesh& mesh, std::span<const EdgeTag> tags) {
  std::vector<char> seen(static_cast<std::size_t>(mesh.num_p2_nodes()), 0);
  std::vector<int> out;
  for (int e = 0; e < mesh.num_edges(); ++e) {
    if (!tags[e].dirichlet) {
      continue;
    }
    const Edge& edge = mesh.edge(e);
    for (int node : {edge.vertices[0], mesh.num_vertices() + e, edge.vertices[1]}) {
      if (!seen[node]) {
        seen[node] = 1;
        out.push_back(node);
      }
    }
  }
  return out;
}

std::vector<NodalValue> interpolate_dirichlet_nodes(const ScalarField& g1, const Mesh& mesh,
                                                    std::span<const EdgeTag> tags) {
  std::vector<NodalValue> out;
  for (int node : dirichlet_nodes(mesh, tags)) {
    out.push_back({node, g1(mesh.p2_node(node))});
  }
  return out;
}

}  // namespace pdwg
