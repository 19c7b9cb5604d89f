#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <functional>
#include <span>
#include <vector>

#include "pdwg/mesh.hpp"
#include "pdwg/polynomial.hpp"
#include "pdwg/quadrature.hpp"
#include "pdwg/weak_laplacian.hpp"

namespace pdwg {

using SparseMatrix = Eigen::SparseMatrix<double>;

/// Unknown layout of the C0-type quadratic scheme. Primal dofs are the P2
/// node values [0, V+E) followed by two flux values per edge (vn at the lower
/// and upper endpoint, with respect to n_e). Multipliers are one per triangle.
struct DofMap {
  int num_nodes = 0;
  int num_edges = 0;
  int num_triangles = 0;
  std::vector<char> constrained;  // per primal dof
  std::vector<int> free_index;    // primal dof -> free index, -1 if constrained
  std::vector<int> free_dofs;     // free index -> primal dof

  int num_primal() const { return num_nodes + 2 * num_edges; }
  int num_free() const { return static_cast<int>(free_dofs.size()); }
  int node_dof(int node) const { return node; }
  int flux_dof(int edge, int end) const { return num_nodes + 2 * edge + end; }
};

/// Constrains every P2 node on the closure of a Dirichlet edge and both flux
/// dofs of every Neumann edge.
DofMap build_dofmap(const Mesh& mesh, std::span<const EdgeTag> tags);

/// Point samples of the boundary data, in the order noise is drawn: edges by
/// index; within an edge the Dirichlet nodes (lower vertex, midpoint, upper
/// vertex, each node once overall), then the Neumann values at the edge rule
/// points in order.
struct BoundarySamples {
  enum class Kind { dirichlet_node, neumann_point };
  struct Site {
    Kind kind;
    int index;  // P2 node for Dirichlet, edge for Neumann
    int point;  // rule point for Neumann, -1 for Dirichlet
  };
  std::vector<Site> sites;
  std::vector<double> values;
  LineQuadrature rule;
};

// Outward normal derivative data g2(p, n_out).
using NormalDerivativeField = std::function<double(Point, Point)>;

BoundarySamples sample_boundary_data(const Mesh& mesh, std::span<const EdgeTag> tags, const ScalarField& g1,
                                     const NormalDerivativeField& g2, const LineQuadrature& rule);

// Outward unit normal of a boundary edge.
Point boundary_outward_normal(const Mesh& mesh, int edge);

/// Full stabilizer over all primal dofs. In C0 mode v0 - vb vanishes on every
/// edge, so only the h_T^-1 normal-derivative mismatch term contributes.
SparseMatrix assemble_stabilizer(const Mesh& mesh, const DofMap& dofs, const LineQuadrature& rule);

struct ConstraintBlock {
  SparseMatrix matrix;   // rows: triangles, columns: primal dofs
  Eigen::VectorXd load;  // (f, 1)_T
};

/// Row T: sum_e s(T,e) int_e vn ds = int_T f dx.
ConstraintBlock assemble_constraint(const Mesh& mesh, const DofMap& dofs, const ScalarField& f,
                                    const TriangleQuadrature& rule);

struct BoundaryLift {
  Eigen::VectorXd constrained_values;  // full primal length, zero at free dofs
  Eigen::VectorXd rhs_dual;            // -S_fc c
  Eigen::VectorXd rhs_primal;          // load - B_fc c
};

/// Dirichlet node values are taken as given; Neumann samples are projected
/// onto P1 per edge and converted from the outward sense to n_e. Throws
/// std::invalid_argument when a sample targets an unconstrained dof.
BoundaryLift apply_boundary_conditions(const BoundarySamples& samples, const Mesh& mesh, std::span<const EdgeTag> tags,
                                       const DofMap& dofs, const SparseMatrix& stabilizer,
                                       const ConstraintBlock& constraint);

struct ProblemData {
  ScalarField load;
  BoundarySamples boundary;
};

/// [S B^T; B 0] over the free primal dofs and the multipliers.
struct SaddleSystem {
  DofMap dofs;
  SparseMatrix stabilizer;  // full primal
  ConstraintBlock constraint;
  Eigen::VectorXd constrained_values;
  SparseMatrix stabilizer_free;
  SparseMatrix constraint_free;
  SparseMatrix matrix;
  Eigen::VectorXd rhs;  // [rhs_dual; rhs_primal]

  int num_free() const { return dofs.num_free(); }
  int num_multipliers() const { return dofs.num_triangles; }
  // Free values scattered into a full primal vector with the lifted data.
  Eigen::VectorXd expand(const Eigen::VectorXd& free_values) const;
};

SaddleSystem build_saddle_system(const Mesh& mesh, std::span<const EdgeTag> tags, const ProblemData& problem,
                                 const QuadratureOptions& quad = {});

/// Weak function on triangle t built from C0 node values and edge fluxes:
/// v0 the P2 interpolant, vb its trace, vn the stored P1 flux.
ElementWeakFunction element_weak_function(const Mesh& mesh, int t, std::span<const double> node_values,
                                          std::span<const double> flux_values);

}  // namespace pdwg
