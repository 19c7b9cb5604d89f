#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pdwg/assembly.hpp"
#include "pdwg/linsolve.hpp"
#include "pdwg/mesh.hpp"
#include "pdwg/norms.hpp"
#include "pdwg/problems.hpp"

namespace pdwg {

struct SolveOptions {
  QuadratureOptions quad;
  NoiseSpec noise;
};

struct SolveOutcome {
  Mesh mesh;
  std::vector<EdgeTag> tags;
  SaddleSystem system;
  Solution solution;
  ProjectedExact qhu;
  ErrorReport errors;
};

/// One solve on the n x n mesh with boundary data sampled from the exact
/// solution (then perturbed when noise.amplitude > 0). Throws SingularSystem
/// from the factorization.
SolveOutcome solve_problem(const ManufacturedSolution& solution, std::span<const BoundarySegmentSpec> segments, int n,
                           const SolveOptions& options = {});

/// log2(coarse / fine); empty when either error is not positive.
std::optional<double> compute_order(double coarse_err, double fine_err);

struct ConvergenceRow {
  int n = 0;
  double h = 0.0;
  std::optional<ErrorReport> errors;  // empty when the solve failed
  std::string failure;
  // h2, l1, l2, h1, linf, w11
  std::array<std::optional<double>, 6> orders;
};

struct ConvergenceTable {
  std::string problem;
  std::string case_name;
  std::vector<ConvergenceRow> rows;

  static constexpr const char* kCsvHeader =
      "n,h,h2,l1,l2,h1,linf,w11,lambda0h,ord_h2,ord_l1,ord_l2,ord_h1,ord_linf,ord_w11";

  std::string to_csv() const;
  std::string to_markdown() const;
};

/// n_list must be strictly increasing; orders are filled only between rows
/// whose n doubles. Solver failures are recorded in the row.
ConvergenceTable run_convergence(const ManufacturedSolution& solution, const CaseConfig& config,
                                 std::span<const int> n_list, const SolveOptions& options = {});

struct FieldSnapshot {
  std::vector<std::array<double, 4>> nodes;     // x, y, u0, u0 - u(x, y)
  std::vector<std::array<double, 3>> elements;  // cx, cy, lambda

  std::string nodes_csv() const;
  std::string elements_csv() const;
};

FieldSnapshot make_snapshot(const SolveOutcome& outcome, const ManufacturedSolution& solution);

struct NoiseRun {
  double amplitude = 0.0;
  std::optional<ErrorReport> errors;
  std::string failure;
  FieldSnapshot snapshot;
};

struct NoiseStudy {
  std::string problem;
  std::string case_name;
  int n = 0;
  std::uint64_t seed = kDefaultSeed;
  std::vector<NoiseRun> runs;

  static constexpr const char* kCsvHeader = "amplitude,l2,linf,h2,l1,h1,w11,lambda0h";
  std::string summary_csv() const;
};

/// One solve per amplitude, every one seeded identically. Amplitudes must
/// include 0.
NoiseStudy run_noise_study(const ManufacturedSolution& solution, const CaseConfig& config, int n,
                           std::span<const double> amplitudes, std::uint64_t seed = kDefaultSeed,
                           const QuadratureOptions& quad = {});

// Fixed-format number used in every CSV: %.10e, blank for missing values.
std::string format_number(std::optional<double> v);

}  // namespace pdwg
