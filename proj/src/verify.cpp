#include "pdwg/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "pdwg/weak_laplacian.hpp"

namespace pdwg {

namespace {

std::vector<EdgeTag> tags_for(const Mesh& mesh, const CaseConfig& config) {
  return classify_boundary(mesh, config.segments);
}

SaddleSystem exact_system(const Mesh& mesh, std::span<const EdgeTag> tags, const ManufacturedSolution& u,
                          const QuadratureOptions& quad = {}) {
  ProblemData data{u.laplacian, sample_exact_boundary_data(u, mesh, tags, gauss_legendre(quad.edge_points))};
  return build_saddle_system(mesh, tags, data, quad);
}

ManufacturedSolution paraboloid() {
  return {"x2+y2", [](Point p) { return p.x * p.x + p.y * p.y; }, [](Point p) { return Point{2.0 * p.x, 2.0 * p.y}; },
          [](Point) { return 4.0; }};
}

std::span<const double> as_span(const Eigen::VectorXd& v) {
  return {v.data(), static_cast<std::size_t>(v.size())};
}

}  // namespace

bool VerificationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed(); });
}

void VerificationReport::add(std::string name, double discrepancy, double tolerance) {
  checks.push_back({std::move(name), discrepancy, tolerance});
}

void VerificationReport::merge(const VerificationReport& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  measurements.insert(measurements.end(), other.measurements.begin(), other.measurements.end());
}

std::string VerificationReport::to_string() const {
  std::ostringstream out;
  char buf[256];
  for (const auto& c : checks) {
    std::snprintf(buf, sizeof buf, "%-4s %-48s %.3e <= %.1e\n", c.passed() ? "PASS" : "FAIL", c.name.c_str(),
                  c.discrepancy, c.tolerance);
    out << buf;
  }
  for (const auto& m : measurements) {
    std::snprintf(buf, sizeof buf, "info %-48s %.6g\n", m.name.c_str(), m.value);
    out << buf;
  }
  return out.str();
}

double check_commutative(const Mesh& mesh, const ManufacturedSolution& theta) {
  const TriangleQuadrature tri = triangle_quadrature(8);
  const LineQuadrature line = gauss_legendre(5);
  double worst = 0.0;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const ElementGeometry& geom = mesh.geometry(t);
    ElementWeakFunction q;
    q.v0 = project_L2_element(theta.u, geom, 2, tri);
    for (int i = 0; i < 3; ++i) {
      const auto& [a, b] = geom.edge_endpoints[i];
      const Point n = geom.edge_normals[i];
      q.vb[i] = project_L2_edge(theta.u, a, b, 2, line);
      q.vn[i] = project_L2_edge([&](Point p) { return theta.normal_derivative(p, n); }, a, b, 1, line);
    }
    const double lhs = discrete_weak_laplacian(q, geom, 0)(geom.centroid);
    const double rhs = integrate_element(geom, tri, theta.laplacian) / geom.area;
    worst = std::max(worst, std::abs(lhs - rhs) * std::sqrt(geom.area));
  }
  return worst;
}

Eigen::VectorXd build_vstar(std::span<const double> lambda, const Mesh& mesh, std::span<const EdgeTag> tags) {
  const int nodes = mesh.num_p2_nodes();
  Eigen::VectorXd v = Eigen::VectorXd::Zero(nodes + 2 * mesh.num_edges());
  for (int e = 0; e < mesh.num_edges(); ++e) {
    if (tags[e].neumann) continue;
    const double value = mesh.edge(e).length * lambda_jump(mesh, lambda, e);
    v[nodes + 2 * e] = value;
    v[nodes + 2 * e + 1] = value;
  }
  return v;
}

double weak_laplacian_pairing(const Mesh& mesh, const Eigen::VectorXd& primal, std::span<const double> lambda) {
  const std::span<const double> all = as_span(primal);
  const std::span<const double> nodes = all.first(static_cast<std::size_t>(mesh.num_p2_nodes()));
  const std::span<const double> flux = all.subspan(static_cast<std::size_t>(mesh.num_p2_nodes()));
  double sum = 0.0;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const ElementGeometry& geom = mesh.geometry(t);
    const ElementWeakFunction v = element_weak_function(mesh, t, nodes, flux);
    sum += discrete_weak_laplacian(v, geom, 0)(geom.centroid) * lambda[t] * geom.area;
  }
  return sum;
}

InfSupSample sample_infsup(const Mesh& mesh, std::span<const EdgeTag> tags, int draws, std::uint64_t seed) {
  const DofMap dofs = build_dofmap(mesh, tags);
  const SparseMatrix s = assemble_stabilizer(mesh, dofs, gauss_legendre(QuadratureOptions{}.edge_points));
  UniformSource rng(seed);
  InfSupSample out;
  out.n = mesh.subdivisions();
  out.min_ratio = std::numeric_limits<double>::infinity();
  std::vector<double> lambda(static_cast<std::size_t>(mesh.num_triangles()));
  for (int k = 0; k < draws; ++k) {
    for (double& l : lambda) l = 2.0 * rng.next() - 1.0;
    const Eigen::VectorXd v = build_vstar(lambda, mesh, tags);
    const double norm_sq = std::pow(lambda_norm(lambda, mesh, tags), 2);
    const double pairing = weak_laplacian_pairing(mesh, v, lambda);
    out.max_relative_identity_error = std::max(out.max_relative_identity_error, std::abs(pairing - norm_sq) / norm_sq);
    // v* has no node part, so ||v*||_{2,h}^2 reduces to s(v*, v*).
    const double ratio = v.dot(s * v) / norm_sq;
    out.min_ratio = std::min(out.min_ratio, ratio);
    out.max_ratio = std::max(out.max_ratio, ratio);
  }
  return out;
}

VerificationReport check_infsup(const CaseConfig& config, std::span<const int> n_list, int draws, std::uint64_t seed) {
  VerificationReport report;
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (int n : n_list) {
    const Mesh mesh = build_uniform_unit_square(n);
    const auto tags = tags_for(mesh, config);
    const InfSupSample s = sample_infsup(mesh, tags, draws, seed);
    report.add("inf-sup identity " + config.name + " n=" + std::to_string(n), s.max_relative_identity_error, 1e-12);
    report.measurements.push_back({"inf-sup ratio min n=" + std::to_string(n), s.min_ratio});
    report.measurements.push_back({"inf-sup ratio max n=" + std::to_string(n), s.max_ratio});
    lo = std::min(lo, s.min_ratio);
    hi = std::max(hi, s.max_ratio);
  }
  report.add("inf-sup ratio spread across meshes " + config.name, hi / lo, 4.0);
  return report;
}

ErrorEquationResiduals error_equation_residuals(const Mesh& mesh, const SaddleSystem& system, const Solution& solution,
                                                const ProjectedExact& qhu) {
  ErrorEquationResiduals out;
  const DofMap& d = system.dofs;

  Eigen::VectorXd e_flux = Eigen::VectorXd::Zero(d.num_primal());
  e_flux.tail(2 * d.num_edges) = solution.un - qhu.flux;
  out.constraint = (system.constraint.matrix * e_flux).cwiseAbs().maxCoeff();

  const std::span<const double> u0 = as_span(solution.u0);
  const std::span<const double> un = as_span(solution.un);
  std::vector<double> unit_nodes(static_cast<std::size_t>(d.num_nodes), 0.0);
  std::vector<double> unit_flux(static_cast<std::size_t>(2 * d.num_edges), 0.0);
  Eigen::VectorXd residual = Eigen::VectorXd::Zero(d.num_primal());
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const ElementGeometry& geom = mesh.geometry(t);
    const ElementWeakFunction q = qhu.on_element(mesh, t);
    const ElementWeakFunction e = element_weak_function(mesh, t, u0, un) - q;
    const auto nodes = mesh.p2_nodes(t);
    const auto& edges = mesh.triangle_edges(t);
    for (int j = 0; j < 12; ++j) {
      double* slot;
      int dof;
      if (j < 6) {
        slot = &unit_nodes[nodes[j]];
        dof = d.node_dof(nodes[j]);
      } else {
        const int i = (j - 6) / 2;
        const int end = (j - 6) % 2;
        slot = &unit_flux[2 * edges[i] + end];
        dof = d.flux_dof(edges[i], end);
      }
      if (d.constrained[dof]) continue;
      *slot = 1.0;
      const ElementWeakFunction phi = element_weak_function(mesh, t, unit_nodes, unit_flux);
      *slot = 0.0;
      residual[dof] += local_stabilizer(e, phi, geom) + local_stabilizer(q, phi, geom) +
                       solution.lambda[t] * discrete_weak_laplacian(phi, geom, 0)(geom.centroid) * geom.area;
    }
  }
  out.stabilizer = residual.cwiseAbs().maxCoeff();
  return out;
}

double symmetry_defect(const SparseMatrix& m) {
  const SparseMatrix diff = m - SparseMatrix(m.transpose());
  double worst = 0.0;
  for (int k = 0; k < diff.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(diff, k); it; ++it) worst = std::max(worst, std::abs(it.value()));
  }
  return worst;
}

double min_quadratic_form(const SparseMatrix& s, int samples, std::uint64_t seed) {
  UniformSource rng(seed);
  double lo = std::numeric_limits<double>::infinity();
  Eigen::VectorXd v(s.cols());
  for (int k = 0; k < samples; ++k) {
    for (int i = 0; i < v.size(); ++i) v[i] = 2.0 * rng.next() - 1.0;
    lo = std::min(lo, v.dot(s * v));
  }
  return lo;
}

double consistency_residual(const Mesh& mesh, const SaddleSystem& system, const ManufacturedSolution& u,
                            const QuadratureOptions& quad) {
  const DofMap& d = system.dofs;
  const ProjectedExact qhu = project_exact(u, mesh, quad);
  Eigen::VectorXd primal(d.num_primal());
  for (int node = 0; node < d.num_nodes; ++node) primal[node] = u(mesh.p2_node(node));
  primal.tail(2 * d.num_edges) = qhu.flux;
  Eigen::VectorXd x = Eigen::VectorXd::Zero(system.matrix.rows());
  for (int i = 0; i < d.num_free(); ++i) x[i] = primal[d.free_dofs[i]];
  return (system.matrix * x - system.rhs).cwiseAbs().maxCoeff();
}

VerificationReport run_verification() {
  VerificationReport report;
  const ManufacturedSolution quadratic = paraboloid();
  const ManufacturedSolution& sinsin = find_solution("sinsin");
  const ManufacturedSolution& quad = find_solution("quad");
  const CaseConfig& case1 = find_case("case1");

  for (int n : {1, 2, 4}) {
    report.add("commutative x^2+y^2 n=" + std::to_string(n),
               check_commutative(build_uniform_unit_square(n), quadratic), 1e-12);
  }
  report.add("commutative sinsin n=4", check_commutative(build_uniform_unit_square(4), sinsin), 1e-10);

  const int infsup_n[] = {2, 4, 8, 16};
  report.merge(check_infsup(case1, infsup_n));

  for (const auto& [u, n, tol] : {std::tuple{&quad, 4, 1e-10}, std::tuple{&sinsin, 8, 1e-8}}) {
    const Mesh mesh = build_uniform_unit_square(n);
    const auto tags = tags_for(mesh, case1);
    const SaddleSystem sys = exact_system(mesh, tags, *u);
    const Solution sol = factor_and_solve(sys);
    const ProjectedExact qhu = project_exact(*u, mesh);
    const ErrorEquationResiduals r = error_equation_residuals(mesh, sys, sol, qhu);
    const std::string tag = u->name + " case1 n=" + std::to_string(n);
    report.add("error equation ||B e_h|| " + tag, r.constraint, tol);
    if (u == &quad) {
      report.add("error equation stabilizer row " + tag, r.stabilizer, 1e-9);
      report.add("consistency residual " + tag, consistency_residual(mesh, sys, quad), 1e-10);
      report.add("symmetry of M " + tag, symmetry_defect(sys.matrix), 1e-14);
      report.add("negative part of v^T S v " + tag, std::max(0.0, -min_quadratic_form(sys.stabilizer_free, 100, kDefaultSeed)),
                 1e-12);
    } else {
      const ErrorReport err = error_norms(mesh, tags, sol, qhu);
      report.measurements.push_back({"s(e,e)/||e||_{2,h}^2 " + tag, err.stabilizer_sq / (err.h2 * err.h2)});
    }
  }

  for (int n : {8, 16, 32}) {
    const Mesh mesh = build_uniform_unit_square(n);
    const auto tags = tags_for(mesh, find_case("case2"));
    const Solution sol = factor_and_solve(exact_system(mesh, tags, sinsin));
    report.add("case2 pivot 1e-12*scale/min n=" + std::to_string(n), 1e-12 / sol.pivots.relative_min_pivot(), 1.0);
    report.measurements.push_back({"case2 relative min pivot n=" + std::to_string(n), sol.pivots.relative_min_pivot()});
  }
  return report;
}

}  // namespace pdwg
