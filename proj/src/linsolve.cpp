#include "pdwg/linsolve.hpp"

#include <Eigen/OrderingMethods>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace pdwg {

namespace {

using LU = Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>>;

// Exposes the diagonal of U, which SparseLU keeps inside its supernodal L
// storage.
class PivotingLU : public LU {
public:
  std::pair<double, double> pivot_range() const {
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (Eigen::Index j = 0; j < this->cols(); ++j) {
      double d = 0.0;
      for (typename LU::SCMatrix::InnerIterator it(this->m_Lstore, j); it; ++it) {
        if (it.index() == j) {
          d = std::abs(it.value());
          break;
        }
      }
      lo = std::min(lo, d);
      hi = std::max(hi, d);
    }
    return {lo, hi};
  }
};

double inf_norm(const Eigen::VectorXd& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

LinearSolveResult solve_sparse(const SparseMatrix& matrix, const Eigen::VectorXd& rhs) {
  if (matrix.rows() != matrix.cols() || matrix.rows() != rhs.size()) {
    throw std::invalid_argument("solve_sparse: dimension mismatch");
  }
  LinearSolveResult out;
  for (int k = 0; k < matrix.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(matrix, k); it; ++it) {
      out.pivots.scale = std::max(out.pivots.scale, std::abs(it.value()));
    }
  }

  SparseMatrix a = matrix;
  a.makeCompressed();
  PivotingLU lu;
  lu.analyzePattern(a);
  lu.factorize(a);
  if (lu.info() != Eigen::Success) {
    throw SingularSystem("sparse LU failed: " + lu.lastErrorMessage());
  }
  const auto [lo, hi] = lu.pivot_range();
  out.pivots.min_pivot = lo;
  out.pivots.max_pivot = hi;
  if (!(lo > kPivotTolerance * out.pivots.scale)) {
    std::ostringstream msg;
    msg << "pivot " << lo << " below " << kPivotTolerance << " x scale " << out.pivots.scale;
    throw SingularSystem(msg.str());
  }

  out.x = lu.solve(rhs);
  const double b_norm = inf_norm(rhs);
  Eigen::VectorXd r = rhs - matrix * out.x;
  out.residual_inf = inf_norm(r);
  while (out.refinement_passes < 3 && out.residual_inf > 1e-11 * b_norm) {
    out.x += lu.solve(r);
    r = rhs - matrix * out.x;
    out.residual_inf = inf_norm(r);
    ++out.refinement_passes;
  }
  if (!std::isfinite(out.residual_inf)) {
    throw SingularSystem("solution is not finite");
  }
  return out;
}

Solution factor_and_solve(const SaddleSystem& system) {
  const LinearSolveResult r = solve_sparse(system.matrix, system.rhs);
  const int nf = system.num_free();
  const Eigen::VectorXd primal = system.expand(r.x.head(nf));
  const DofMap& d = system.dofs;
  Solution s;
  s.u0 = primal.head(d.num_nodes);
  s.un = primal.tail(2 * d.num_edges);
  s.lambda = r.x.tail(system.num_multipliers());
  s.residual_inf = r.residual_inf;
  s.refinement_passes = r.refinement_passes;
  s.pivots = r.pivots;
  return s;
}

}  // namespace pdwg
