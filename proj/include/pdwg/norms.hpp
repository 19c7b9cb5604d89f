#pragma once

#include <Eigen/Core>

#include <span>
#include <vector>

#include "pdwg/linsolve.hpp"
#include "pdwg/mesh.hpp"
#include "pdwg/polynomial.hpp"
#include "pdwg/problems.hpp"
#include "pdwg/weak_laplacian.hpp"

namespace pdwg {

/// Q_h u = {Q0 u, Qb u, Qn(grad u . n_e)} for the quadratic scheme.
struct ProjectedExact {
  std::vector<ElementPolynomial> q0;  // per triangle, P2
  std::vector<EdgePolynomial> qb;     // per edge, P2
  std::vector<EdgePolynomial> qn;     // per edge, P1, w.r.t. n_e
  Eigen::VectorXd flux;               // qn at the edge endpoints, solution flux layout

  ElementWeakFunction on_element(const Mesh& mesh, int t) const;
};

ProjectedExact project_exact(const ManufacturedSolution& u, const Mesh& mesh, const QuadratureOptions& quad = {});

struct ErrorReport {
  double h2 = 0.0;
  double l1 = 0.0;
  double l2 = 0.0;
  double h1 = 0.0;
  double linf = 0.0;
  double w11 = 0.0;
  double lambda0h = 0.0;
  // Pieces of h2^2, kept for the coercivity diagnostic.
  double laplacian_sq = 0.0;
  double stabilizer_sq = 0.0;
};

/// Norms of e = u_h - Q_h u and ||lambda_h||_{0,h}. L1 and W11 integrate |.|
/// with the fixed rules; L-infinity samples the rule points and the six P2
/// nodes of each element.
ErrorReport error_norms(const Mesh& mesh, std::span<const EdgeTag> tags, const Solution& solution,
                        const ProjectedExact& qhu, const QuadratureOptions& quad = {});

/// [lambda] on edge e: lambda(T+) - lambda(T-) where T+ is the triangle whose
/// outward normal is n_e; on a boundary edge, s(T,e) lambda(T).
double lambda_jump(const Mesh& mesh, std::span<const double> lambda, int e);

/// (sum over edges not in Gamma_n of h_e ||[lambda]||_e^2)^(1/2) for piecewise
/// constant lambda.
double lambda_norm(std::span<const double> lambda, const Mesh& mesh, std::span<const EdgeTag> tags);

}  // namespace pdwg
