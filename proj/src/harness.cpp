#include "pdwg/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace pdwg {

namespace {

std::array<double, 6> rate_norms(const ErrorReport& e) { return {e.h2, e.l1, e.l2, e.h1, e.linf, e.w11}; }

}  // namespace

std::string format_number(std::optional<double> v) {
  if (!v) return "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10e", *v);
  return buf;
}

SolveOutcome solve_problem(const ManufacturedSolution& solution, std::span<const BoundarySegmentSpec> segments, int n,
                           const SolveOptions& options) {
  Mesh mesh = build_uniform_unit_square(n);
  std::vector<EdgeTag> tags = classify_boundary(mesh, segments);
  ProblemData data{solution.laplacian,
                   sample_exact_boundary_data(solution, mesh, tags, gauss_legendre(options.quad.edge_points))};
  perturb(data.boundary.values, options.noise);
  SaddleSystem system = build_saddle_system(mesh, tags, data, options.quad);
  Solution sol = factor_and_solve(system);
  ProjectedExact qhu = project_exact(solution, mesh, options.quad);
  ErrorReport errors = error_norms(mesh, tags, sol, qhu, options.quad);
  return {std::move(mesh), std::move(tags), std::move(system), std::move(sol), std::move(qhu), errors};
}

std::optional<double> compute_order(double coarse_err, double fine_err) {
  if (!(coarse_err > 0.0) || !(fine_err > 0.0)) return std::nullopt;
  return std::log2(coarse_err / fine_err);
}

ConvergenceTable run_convergence(const ManufacturedSolution& solution, const CaseConfig& config,
                                 std::span<const int> n_list, const SolveOptions& options) {
  if (n_list.empty()) throw std::invalid_argument("run_convergence: empty n list");
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    if (n_list[i] < 1 || (i > 0 && n_list[i] <= n_list[i - 1])) {
      throw std::invalid_argument("run_convergence: n list must be positive and strictly increasing");
    }
  }
  ConvergenceTable table{solution.name, config.name, {}};
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    ConvergenceRow row;
    row.n = n_list[i];
    row.h = 1.0 / row.n;
    try {
      row.errors = solve_problem(solution, config.segments, row.n, options).errors;
    } catch (const SingularSystem& e) {
      row.failure = e.what();
    }
    if (i > 0 && n_list[i] == 2 * n_list[i - 1] && row.errors && table.rows.back().errors) {
      const auto coarse = rate_norms(*table.rows.back().errors);
      const auto fine = rate_norms(*row.errors);
      for (int k = 0; k < 6; ++k) row.orders[k] = compute_order(coarse[k], fine[k]);
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::string ConvergenceTable::to_csv() const {
  std::ostringstream out;
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    out << r.n << ',' << format_number(r.h);
    const ErrorReport* e = r.errors ? &*r.errors : nullptr;
    for (double ErrorReport::*field : {&ErrorReport::h2, &ErrorReport::l1, &ErrorReport::l2, &ErrorReport::h1,
                                       &ErrorReport::linf, &ErrorReport::w11, &ErrorReport::lambda0h}) {
      out << ',' << (e ? format_number(e->*field) : std::string());
    }
    for (const auto& o : r.orders) out << ',' << format_number(o);
    out << '\n';
  }
  return out.str();
}

std::string ConvergenceTable::to_markdown() const {
  std::ostringstream out;
  out << "### " << problem << " / " << case_name << "\n\n";
  out << "| n | h2 | order | l1 | order | l2 | order | h1 | order | linf | order | w11 | order |\n";
  out << "|---|---|---|---|---|---|---|---|---|---|---|---|---|\n";
  char buf[32];
  for (const auto& r : rows) {
    out << "| " << r.n;
    if (!r.errors) {
      out << " | solver failure: " << r.failure << " |||||||||||\n";
      continue;
    }
    const auto v = rate_norms(*r.errors);
    for (int k = 0; k < 6; ++k) {
      std::snprintf(buf, sizeof buf, "%.4e", v[k]);
      out << " | " << buf << " | ";
      if (r.orders[k]) {
        std::snprintf(buf, sizeof buf, "%.4f", *r.orders[k]);
        out << buf;
      }
    }
    out << " |\n";
  }
  return out.str();
}

FieldSnapshot make_snapshot(const SolveOutcome& outcome, const ManufacturedSolution& solution) {
  FieldSnapshot snap;
  const Mesh& mesh = outcome.mesh;
  snap.nodes.reserve(static_cast<std::size_t>(mesh.num_p2_nodes()));
  for (int node = 0; node < mesh.num_p2_nodes(); ++node) {
    const Point p = mesh.p2_node(node);
    const double u0 = outcome.solution.u0[node];
    snap.nodes.push_back({p.x, p.y, u0, u0 - solution(p)});
  }
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const Point c = mesh.geometry(t).centroid;
    snap.elements.push_back({c.x, c.y, outcome.solution.lambda[t]});
  }
  return snap;
}

std::string FieldSnapshot::nodes_csv() const {
  std::ostringstream out;
  out << "x,y,u0,err\n";
  for (const auto& r : nodes) {
    out << format_number(r[0]) << ',' << format_number(r[1]) << ',' << format_number(r[2]) << ','
        << format_number(r[3]) << '\n';
  }
  return out.str();
}

std::string FieldSnapshot::elements_csv() const {
  std::ostringstream out;
  out << "cx,cy,lambda\n";
  for (const auto& r : elements) {
    out << format_number(r[0]) << ',' << format_number(r[1]) << ',' << format_number(r[2]) << '\n';
  }
  return out.str();
}

NoiseStudy run_noise_study(const ManufacturedSolution& solution, const CaseConfig& config, int n,
                           std::span<const double> amplitudes, std::uint64_t seed, const QuadratureOptions& quad) {
  if (std::find(amplitudes.begin(), amplitudes.end(), 0.0) == amplitudes.end()) {
    throw std::invalid_argument("run_noise_study: amplitudes must include 0");
  }
  NoiseStudy study{solution.name, config.name, n, seed, {}};
  for (double a : amplitudes) {
    NoiseRun run;
    run.amplitude = a;
    try {
      const SolveOutcome out = solve_problem(solution, config.segments, n, {quad, {a, seed}});
      run.errors = out.errors;
      run.snapshot = make_snapshot(out, solution);
    } catch (const SingularSystem& e) {
      run.failure = e.what();
    }
    study.runs.push_back(std::move(run));
  }
  return study;
}

std::string NoiseStudy::summary_csv() const {
  std::ostringstream out;
  out << kCsvHeader << '\n';
  for (const auto& r : runs) {
    out << format_number(r.amplitude);
    const ErrorReport* e = r.errors ? &*r.errors : nullptr;
    for (double ErrorReport::*field : {&ErrorReport::l2, &ErrorReport::linf, &ErrorReport::h2, &ErrorReport::l1,
                                       &ErrorReport::h1, &ErrorReport::w11, &ErrorReport::lambda0h}) {
      out << ',' << (e ? format_number(e->*field) : std::string());
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace pdwg
