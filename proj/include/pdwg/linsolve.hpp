#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <stdexcept>
#include <string>

#include "pdwg/assembly.hpp"

namespace pdwg {

/// Raised when a pivot falls below 1e-14 times the largest matrix entry
/// magnitude: a boundary configuration without enough data, or a system too
/// ill-conditioned to factor.
class SingularSystem : public std::runtime_error {
public:
  explicit SingularSystem(const std::string& what) : std::runtime_error(what) {}
};

struct PivotReport {
  double min_pivot = 0.0;  // smallest |U_ii|
  double max_pivot = 0.0;
  double scale = 0.0;      // largest |M_ij|

  double relative_min_pivot() const { return scale > 0.0 ? min_pivot / scale : 0.0; }
  // Ratio of extreme pivots; a cheap conditioning indicator.
  double pivot_spread() const { return min_pivot > 0.0 ? max_pivot / min_pivot : 0.0; }
};

struct LinearSolveResult {
  Eigen::VectorXd x;
  double residual_inf = 0.0;
  int refinement_passes = 0;
  PivotReport pivots;
};

inline constexpr double kPivotTolerance = 1e-14;

/// Sparse LU with column ordering and partial pivoting, then up to three
/// passes of iterative refinement while ||Mx - b||_inf > 1e-11 ||b||_inf.
LinearSolveResult solve_sparse(const SparseMatrix& matrix, const Eigen::VectorXd& rhs);

struct Solution {
  Eigen::VectorXd u0;      // P2 node values (V + E)
  Eigen::VectorXd un;      // flux values, two per edge, w.r.t. n_e
  Eigen::VectorXd lambda;  // one per triangle
  double residual_inf = 0.0;
  int refinement_passes = 0;
  PivotReport pivots;
};

Solution factor_and_solve(const SaddleSystem& system);

}  // namespace pdwg
