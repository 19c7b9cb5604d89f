#include "pdwg/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace pdwg {

LineQuadrature gauss_legendre(int npoints) {
  if (npoints < 1 || npoints > 64) {
    throw std::invalid_argument("gauss_legendre: unsupported number of points");
  }
  const auto n = static_cast<unsigned>(npoints);
  LineQuadrature rule;
  rule.degree = 2 * npoints - 1;
  rule.points.resize(n);
  rule.weights.resize(n);
  for (unsigned i = 0; i < n; ++i) {
    // Newton from the Chebyshev-like initial guess; roots come out descending.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      const double p = std::legendre(n, x);
      const double pm1 = n > 1 ? std::legendre(n - 1, x) : 1.0;
      dp = n * (x * p - pm1) / (x * x - 1.0);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) {
        break;
      }
    }
    {
      const double p = std::legendre(n, x);
      const double pm1 = n > 1 ? std::legendre(n - 1, x) : 1.0;
      dp = n * (x * p - pm1) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // Store ascending on [0, 1].
    rule.points[n - 1 - i] = 0.5 * (x + 1.0);
    rule.weights[n - 1 - i] = 0.5 * w;
  }
  return rule;
}

LineQuadrature line_quadrature(int min_degree) {
  return gauss_legendre(std::max(1, (min_degree + 2) / 2));
}

TriangleQuadrature triangle_quadrature(int min_degree) {
  if (min_degree < 0 || min_degree > kMaxTriangleDegree) {
    throw std::invalid_argument("triangle_quadrature: unsupported degree " + std::to_string(min_degree));
  }
  // x = s, y = t (1 - s), Jacobian (1 - s): the integrand gains one degree in s.
  const int m = (min_degree + 3) / 2;
  const LineQuadrature g = gauss_legendre(m);
  TriangleQuadrature rule;
  rule.degree = min_degree;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const double s = g.points[i];
      const double t = g.points[j];
      const double x = s;
      const double y = t * (1.0 - s);
      rule.points.push_back({1.0 - x - y, x, y});
      rule.weights.push_back(g.weights[i] * g.weights[j] * (1.0 - s));
    }
  }
  return rule;
}

}  // namespace pdwg
