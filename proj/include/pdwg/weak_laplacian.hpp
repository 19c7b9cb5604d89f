#pragma once

#include <array>

#include "pdwg/mesh.hpp"
#include "pdwg/polynomial.hpp"

namespace pdwg {

/// Weak function {v0, vb, vn n} on one triangle. vn is stored with respect to
/// the global edge normal n_e; the outward value seen from the element is
/// edge_signs[i] * vn[i].
struct ElementWeakFunction {
  ElementPolynomial v0;
  std::array<EdgePolynomial, 3> vb;
  std::array<EdgePolynomial, 3> vn;

  ElementWeakFunction& operator-=(const ElementWeakFunction& other);
};

ElementWeakFunction operator-(ElementWeakFunction a, const ElementWeakFunction& b);

/// Zero weak function of order k (v0 in P_k, vb in P_k(e), vn in P_{k-1}(e)).
ElementWeakFunction zero_weak_function(const ElementGeometry& geom, int k);

/// {v0, v0|_dT, grad v0 . n_e}: the weak function determined by v0 alone.
ElementWeakFunction weak_function_from_polynomial(const ElementPolynomial& v0, const ElementGeometry& geom);

/// The unique p in P_r(T) with
///   (p, phi)_T = (v0, lap phi)_T - <vb, grad phi . n>_dT + <vn, phi>_dT
/// for all phi in P_r(T).
ElementPolynomial discrete_weak_laplacian(const ElementWeakFunction& v, const ElementGeometry& geom, int r);

/// Piecewise-constant weak Laplacian for C0-type quadratic elements, where the
/// v0 - vb terms vanish: sum_e s(T,e) int_e vn ds / |T|. flux[i] holds the
/// stored P1 values of vn at the two endpoints of local edge i (global
/// orientation).
double weak_laplacian_c0_k2(const std::array<std::array<double, 2>, 3>& flux, const ElementGeometry& geom);

/// s_T(sigma, v) = h^-3 <sigma0 - sigmab, v0 - vb>_dT
///               + h^-1 <grad sigma0 . n - sigman, grad v0 . n - vn>_dT
double local_stabilizer(const ElementWeakFunction& sigma, const ElementWeakFunction& v, const ElementGeometry& geom);

}  // namespace pdwg
