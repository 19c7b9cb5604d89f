#include <gtest/gtest.h>

#include <cmath>
#include <algorithm>
#include <random>

#include "pdwg/mesh.hpp"
#include "pdwg/polynomial.hpp"
#include "pdwg/weak_laplacian.hpp"

using namespace pdwg;

namespace {

const ElementGeometry kReference = make_element_geometry({Point{0, 0}, Point{1, 0}, Point{0, 1}});

ElementPolynomial from_function(const ElementGeometry& g, int k, const ScalarField& f) {
  return project_L2_element(f, g, k, triangle_quadrature(10));
}

// Weak function with v0 = vb = 0 and a constant outward flux on every edge.
ElementWeakFunction unit_outward_flux(const ElementGeometry& g) {
  ElementWeakFunction v = zero_weak_function(g, 2);
  for (int i = 0; i < 3; ++i) v.vn[i].coefficients()[0] = g.edge_signs[i];
  return v;
}

ElementGeometry random_triangle(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  while (true) {
    std::array<Point, 3> v = {Point{u(gen), u(gen)}, Point{u(gen), u(gen)}, Point{u(gen), u(gen)}};
    const double area2 = (v[1].x - v[0].x) * (v[2].y - v[0].y) - (v[2].x - v[0].x) * (v[1].y - v[0].y);
    if (std::abs(area2) < 0.2) continue;
    if (area2 < 0) std::swap(v[1], v[2]);
    std::array<int, 3> ids = {0, 1, 2};
    std::shuffle(ids.begin(), ids.end(), gen);
    return make_element_geometry(v, ids);
  }
}

}  // namespace

TEST(DiscreteWeakLaplacian, CompatibleQuadraticGivesItsLaplacian) {
  const auto v0 = from_function(kReference, 2, [](Point p) { return p.x * p.x + p.y * p.y; });
  const auto v = weak_function_from_polynomial(v0, kReference);
  for (int r = 0; r <= 2; ++r) {
    const auto lap = discrete_weak_laplacian(v, kReference, r);
    for (Point p : {Point{0.2, 0.2}, Point{0.7, 0.1}}) EXPECT_NEAR(lap(p), 4.0, 1e-12) << "r=" << r;
  }
}

TEST(DiscreteWeakLaplacian, HarmonicLinearGivesZero) {
  const auto v0 = from_function(kReference, 1, [](Point p) { return p.x; });
  const auto v = weak_function_from_polynomial(v0, kReference);
  for (int r = 0; r <= 2; ++r) {
    const auto lap = discrete_weak_laplacian(v, kReference, r);
    for (double c : lap.coefficients()) EXPECT_NEAR(c, 0.0, 1e-11);
  }
}

TEST(DiscreteWeakLaplacian, UnitOutwardFluxGivesPerimeterOverArea) {
  const double expected = 4.0 + 2.0 * std::sqrt(2.0);
  EXPECT_NEAR(discrete_weak_laplacian(unit_outward_flux(kReference), kReference, 0)(kReference.centroid), expected,
              1e-13);
  std::array<std::array<double, 2>, 3> flux;
  for (int i = 0; i < 3; ++i) flux[i] = {double(kReference.edge_signs[i]), double(kReference.edge_signs[i])};
  EXPECT_NEAR(weak_laplacian_c0_k2(flux, kReference), expected, 1e-13);
}

TEST(WeakLaplacianC0, ZeroFlux) {
  EXPECT_EQ(weak_laplacian_c0_k2({}, kReference), 0.0);
}

TEST(WeakLaplacianC0, ExactFluxOfQuadraticGivesFour) {
  const ElementGeometry g = make_element_geometry({Point{0.25, 0.0}, Point{0.5, 0.0}, Point{0.25, 0.25}}, {4, 7, 9});
  const auto grad = [](Point p) { return Point{2 * p.x - 10 * p.y, 2 * p.y - 10 * p.x}; };
  std::array<std::array<double, 2>, 3> flux;
  for (int i = 0; i < 3; ++i) {
    const Point n = g.edge_normals[i];
    flux[i] = {dot(grad(g.edge_endpoints[i][0]), n), dot(grad(g.edge_endpoints[i][1]), n)};
  }
  EXPECT_NEAR(weak_laplacian_c0_k2(flux, g), 4.0, 1e-12);
}

TEST(DiscreteWeakLaplacian, RejectsNegativeDegree) {
  EXPECT_THROW(discrete_weak_laplacian(zero_weak_function(kReference, 2), kReference, -1), std::invalid_argument);
}

TEST(DiscreteWeakLaplacianProperty, ConsistencyWithProjectedLaplacian) {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const ElementGeometry g = random_triangle(gen);
    const int k = 2 + trial % 4;
    ElementPolynomial v0(k, g);
    for (double& c : v0.coefficients()) c = coef(gen);
    const auto v = weak_function_from_polynomial(v0, g);
    for (int r = 0; r <= 3; ++r) {
      const auto lap = discrete_weak_laplacian(v, g, r);
      const auto expected = project_L2_element([&](Point p) { return v0.laplacian(p); }, g, r, triangle_quadrature(10));
      for (const Point& p : g.vertices) {
        EXPECT_NEAR(lap(p), expected(p), 1e-10 * std::max(1.0, std::abs(expected(p)))) << "k=" << k << " r=" << r;
      }
    }
  }
}

TEST(DiscreteWeakLaplacianProperty, C0FormulaAgreesWithGeneralOperator) {
  std::mt19937_64 gen(12);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const ElementGeometry g = random_triangle(gen);
    ElementPolynomial v0(2, g);
    for (double& c : v0.coefficients()) c = coef(gen);
    ElementWeakFunction v = weak_function_from_polynomial(v0, g);
    std::array<std::array<double, 2>, 3> flux;
    for (int i = 0; i < 3; ++i) {
      flux[i] = {coef(gen), coef(gen)};
      v.vn[i] = EdgePolynomial(1, g.edge_endpoints[i][0], g.edge_endpoints[i][1]);
      v.vn[i].coefficients() = {flux[i][0], flux[i][1] - flux[i][0]};
    }
    EXPECT_NEAR(discrete_weak_laplacian(v, g, 0)(g.centroid), weak_laplacian_c0_k2(flux, g), 1e-13);
  }
}

TEST(LocalStabilizer, VanishesOnPolynomialWeakFunctions) {
  std::mt19937_64 gen(13);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const ElementGeometry g = random_triangle(gen);
    ElementPolynomial v0(2, g);
    for (double& c : v0.coefficients()) c = coef(gen);
    const auto v = weak_function_from_polynomial(v0, g);
    EXPECT_NEAR(local_stabilizer(v, v, g), 0.0, 1e-24);
  }
}

TEST(LocalStabilizer, SymmetricAndNonnegative) {
  std::mt19937_64 gen(14);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  const ElementGeometry g = random_triangle(gen);
  auto random_weak = [&] {
    ElementWeakFunction v = zero_weak_function(g, 2);
    for (double& c : v.v0.coefficients()) c = coef(gen);
    for (int i = 0; i < 3; ++i) {
      for (double& c : v.vb[i].coefficients()) c = coef(gen);
      for (double& c : v.vn[i].coefficients()) c = coef(gen);
    }
    return v;
  };
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = random_weak();
    const auto b = random_weak();
    EXPECT_NEAR(local_stabilizer(a, b, g), local_stabilizer(b, a, g), 1e-12);
    EXPECT_GT(local_stabilizer(a, a, g), 0.0);
  }
}

TEST(LocalStabilizer, TraceMismatchWeightedByInverseCube) {
  ElementWeakFunction v = zero_weak_function(kReference, 2);
  v.v0.coefficients()[0] = 1.0;  // v0 = 1, vb = 0, vn = 0 = grad v0 . n
  const double h = kReference.diameter;
  EXPECT_NEAR(local_stabilizer(v, v, kReference), (2.0 + std::sqrt(2.0)) / (h * h * h), 1e-13);
}
