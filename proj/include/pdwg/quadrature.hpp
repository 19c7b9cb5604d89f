#pragma once

#include <array>
#include <vector>

namespace pdwg {

/// Rule on [0, 1]; weights sum to 1.
struct LineQuadrature {
  std::vector<double> points;
  std::vector<double> weights;
  int degree = 0;  // exact for polynomials up to this degree

  int size() const { return static_cast<int>(points.size()); }
};

/// Rule on the reference triangle (0,0), (1,0), (0,1). Points are barycentric
/// coordinates; weights sum to the reference area 1/2.
struct TriangleQuadrature {
  std::vector<std::array<double, 3>> points;
  std::vector<double> weights;
  int degree = 0;

  int size() const { return static_cast<int>(points.size()); }
};

// Gauss-Legendre with npoints nodes, mapped to [0, 1].
LineQuadrature gauss_legendre(int npoints);

// Smallest Gauss-Legendre rule exact to min_degree.
LineQuadrature line_quadrature(int min_degree);

constexpr int kMaxTriangleDegree = 10;

/// Collapsed (Duffy) Gauss rule exact for all bivariate polynomials of total
/// degree <= min_degree. Throws std::invalid_argument outside [0, 10].
TriangleQuadrature triangle_quadrature(int min_degree);

/// Quadrature choices shared by assembly and norms.
struct QuadratureOptions {
  int triangle_degree = 6;
  int edge_points = 4;
};

}  // namespace pdwg
