#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pdwg/assembly.hpp"
#include "pdwg/linsolve.hpp"
#include "pdwg/mesh.hpp"
#include "pdwg/norms.hpp"
#include "pdwg/problems.hpp"

namespace pdwg {

struct CheckResult {
  std::string name;
  double discrepancy = 0.0;
  double tolerance = 0.0;

  bool passed() const { return discrepancy <= tolerance; }
};

// Empirical quantity without a pass/fail threshold.
struct Measurement {
  std::string name;
  double value = 0.0;
};

struct VerificationReport {
  std::vector<CheckResult> checks;
  std::vector<Measurement> measurements;

  bool passed() const;
  void add(std::string name, double discrepancy, double tolerance);
  void merge(const VerificationReport& other);
  std::string to_string() const;
};

/// max_T ||Dw(Q_h theta) - Q(lap theta)||_T with the weak Laplacian of degree
/// k - 2 = 0 computed from its defining moment identity. The projections use a
/// degree-8 triangle rule and a 5-point edge rule.
double check_commutative(const Mesh& mesh, const ManufacturedSolution& theta);

/// v* for piecewise-constant lambda: zero node values, vn* = h_e [lambda]_e
/// (both endpoints) on edges outside Gamma_n, zero on Gamma_n. Returns a full
/// primal vector.
Eigen::VectorXd build_vstar(std::span<const double> lambda, const Mesh& mesh, std::span<const EdgeTag> tags);

/// (Dw v, lambda) for a full primal vector v.
double weak_laplacian_pairing(const Mesh& mesh, const Eigen::VectorXd& primal, std::span<const double> lambda);

struct InfSupSample {
  int n = 0;
  double max_relative_identity_error = 0.0;
  double min_ratio = 0.0;  // ||v*||_{2,h}^2 / ||lambda||_{0,h}^2
  double max_ratio = 0.0;
};

/// Draws `draws` per-element lambda vectors uniform in [-1, 1] and checks the
/// pairing identity (Dw v*, lambda) = ||lambda||_{0,h}^2.
InfSupSample sample_infsup(const Mesh& mesh, std::span<const EdgeTag> tags, int draws, std::uint64_t seed);

/// Identity to 1e-12 relative on every mesh, and the spread of the ratio
/// ||v*||^2 / ||lambda||^2 across meshes within a factor of 4.
VerificationReport check_infsup(const CaseConfig& config, std::span<const int> n_list, int draws = 20,
                                std::uint64_t seed = kDefaultSeed);

struct ErrorEquationResiduals {
  double constraint = 0.0;  // ||B e_h||_inf
  double stabilizer = 0.0;  // max over free unit v of |s(e_h,v) + (Dw v, lambda_h) + s(Q_h u, v)|
};

ErrorEquationResiduals error_equation_residuals(const Mesh& mesh, const SaddleSystem& system, const Solution& solution,
                                                const ProjectedExact& qhu);

/// max |M - M^T| entry and the most negative v^T S v over random v, both at
/// free dofs.
double symmetry_defect(const SparseMatrix& m);
double min_quadratic_form(const SparseMatrix& s, int samples, std::uint64_t seed);

/// ||M x - rhs||_inf where x holds the C0 interpolant of u and zero
/// multipliers. Vanishes for quadratic u.
double consistency_residual(const Mesh& mesh, const SaddleSystem& system, const ManufacturedSolution& u,
                            const QuadratureOptions& quad = {});

/// Full suite for the `verify` subcommand.
VerificationReport run_verification();

}  // namespace pdwg
