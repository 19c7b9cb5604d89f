#include "pdwg/assembly.hpp"

#include <stdexcept>

namespace pdwg {

namespace {

using Triplet = Eigen::Triplet<double>;

int local_edge_index(const Mesh& mesh, int t, int edge) {
  const auto& edges = mesh.triangle_edges(t);
  for (int i = 0; i < 3; ++i) {
    if (edges[i] == edge) return i;
  }
  throw std::logic_error("edge not incident to triangle");
}

}  // namespace

DofMap build_dofmap(const Mesh& mesh, std::span<const EdgeTag> tags) {
  if (static_cast<int>(tags.size()) != mesh.num_edges()) {
    throw std::invalid_argument("build_dofmap: one tag per edge required");
  }
  DofMap d;
  d.num_nodes = mesh.num_p2_nodes();
  d.num_edges = mesh.num_edges();
  d.num_triangles = mesh.num_triangles();
  d.constrained.assign(static_cast<std::size_t>(d.num_primal()), 0);
  for (int node : dirichlet_nodes(mesh, tags)) {
    d.constrained[d.node_dof(node)] = 1;
  }
  for (int e = 0; e < mesh.num_edges(); ++e) {
    if (tags[e].neumann) {
      d.constrained[d.flux_dof(e, 0)] = 1;
      d.constrained[d.flux_dof(e, 1)] = 1;
    }
  }
  d.free_index.assign(static_cast<std::size_t>(d.num_primal()), -1);
  for (int i = 0; i < d.num_primal(); ++i) {
    if (!d.constrained[i]) {
      d.free_index[i] = d.num_free();
      d.free_dofs.push_back(i);
    }
  }
  return d;
}

Point boundary_outward_normal(const Mesh& mesh, int edge) {
  const Edge& e = mesh.edge(edge);
  if (!e.on_boundary()) {
    throw std::invalid_argument("boundary_outward_normal: interior edge");
  }
  const int t = e.triangles[0];
  return mesh.geometry(t).outward_normal(local_edge_index(mesh, t, edge));
}

BoundarySamples sample_boundary_data(const Mesh& mesh, std::span<const EdgeTag> tags, const ScalarField& g1,
                                     const NormalDerivativeField& g2, const LineQuadrature& rule) {
  BoundarySamples out;
  out.rule = rule;
  std::vector<char> seen(static_cast<std::size_t>(mesh.num_p2_nodes()), 0);
  for (int e = 0; e < mesh.num_edges(); ++e) {
    const Edge& edge = mesh.edge(e);
    if (tags[e].dirichlet) {
      for (int node : {edge.vertices[0], mesh.num_vertices() + e, edge.vertices[1]}) {
        if (seen[node]) continue;
        seen[node] = 1;
        out.sites.push_back({BoundarySamples::Kind::dirichlet_node, node, -1});
        out.values.push_back(g1(mesh.p2_node(node)));
      }
    }
    if (tags[e].neumann) {
      const Point n_out = boundary_outward_normal(mesh, e);
      const Point a = mesh.vertex(edge.vertices[0]);
      const Point b = mesh.vertex(edge.vertices[1]);
      for (int q = 0; q < rule.size(); ++q) {
        out.sites.push_back({BoundarySamples::Kind::neumann_point, e, q});
        out.values.push_back(g2(a + rule.points[q] * (b - a), n_out));
      }
    }
  }
  return out;
}

SparseMatrix assemble_stabilizer(const Mesh& mesh, const DofMap& dofs, const LineQuadrature& rule) {
  std::vector<Triplet> triplets;
  triplets.reserve(static_cast<std::size_t>(mesh.num_triangles()) * 3 * rule.size() * 64);
  std::array<int, 12> ids;
  std::array<double, 12> g;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const ElementGeometry& geom = mesh.geometry(t);
    const auto nodes = mesh.p2_nodes(t);
    const auto& edges = mesh.triangle_edges(t);
    for (int j = 0; j < 6; ++j) ids[j] = dofs.node_dof(nodes[j]);
    for (int i = 0; i < 3; ++i) {
      ids[6 + 2 * i] = dofs.flux_dof(edges[i], 0);
      ids[6 + 2 * i + 1] = dofs.flux_dof(edges[i], 1);
    }
    const double inv_h = 1.0 / geom.diameter;
    for (int i = 0; i < 3; ++i) {
      const Point n = geom.edge_normals[i];
      const double len = geom.edge_lengths[i];
      for (int q = 0; q < rule.size(); ++q) {
        const double s = rule.points[q];
        const Point x = geom.edge_point(i, s);
        const auto grads = p2::gradients(geom, x);
        g.fill(0.0);
        for (int j = 0; j < 6; ++j) g[j] = dot(grads[j], n);
        g[6 + 2 * i] = -(1.0 - s);
        g[6 + 2 * i + 1] = -s;
        const double w = rule.weights[q] * len * inv_h;
        for (int a = 0; a < 12; ++a) {
          if (g[a] == 0.0) continue;
          triplets.emplace_back(ids[a], ids[a], w * g[a] * g[a]);
          for (int b = a + 1; b < 12; ++b) {
            if (g[b] == 0.0) continue;
            const double v = w * g[a] * g[b];
            triplets.emplace_back(ids[a], ids[b], v);
            triplets.emplace_back(ids[b], ids[a], v);
          }
        }
      }
    }
  }
  SparseMatrix s(dofs.num_primal(), dofs.num_primal());
  s.setFromTriplets(triplets.begin(), triplets.end());
  return s;
}

ConstraintBlock assemble_constraint(const Mesh& mesh, const DofMap& dofs, const ScalarField& f,
                                    const TriangleQuadrature& rule) {
  std::vector<Triplet> triplets;
  triplets.reserve(static_cast<std::size_t>(mesh.num_triangles()) * 6);
  ConstraintBlock out;
  out.load.resize(mesh.num_triangles());
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const ElementGeometry& geom = mesh.geometry(t);
    const auto& edges = mesh.triangle_edges(t);
    for (int i = 0; i < 3; ++i) {
      const double c = geom.edge_signs[i] * 0.5 * geom.edge_lengths[i];
      triplets.emplace_back(t, dofs.flux_dof(edges[i], 0), c);
      triplets.emplace_back(t, dofs.flux_dof(edges[i], 1), c);
    }
    out.load[t] = integrate_element(geom, rule, f);
  }
  out.matrix.resize(mesh.num_triangles(), dofs.num_primal());
  out.matrix.setFromTriplets(triplets.begin(), triplets.end());
  return out;
}

BoundaryLift apply_boundary_conditions(const BoundarySamples& samples, const Mesh& mesh, std::span<const EdgeTag> tags,
                                       const DofMap& dofs, const SparseMatrix& stabilizer,
                                       const ConstraintBlock& constraint) {
  if (samples.sites.size() != samples.values.size()) {
    throw std::invalid_argument("apply_boundary_conditions: sites and values differ in length");
  }
  BoundaryLift lift;
  lift.constrained_values = Eigen::VectorXd::Zero(dofs.num_primal());
  std::vector<char> assigned(static_cast<std::size_t>(dofs.num_primal()), 0);

  // Neumann samples grouped per edge, in rule order.
  std::vector<std::vector<double>> edge_samples(static_cast<std::size_t>(mesh.num_edges()));
  for (std::size_t k = 0; k < samples.sites.size(); ++k) {
    const auto& site = samples.sites[k];
    if (site.kind == BoundarySamples::Kind::dirichlet_node) {
      const int dof = dofs.node_dof(site.index);
      if (!dofs.constrained[dof]) {
        throw std::invalid_argument("apply_boundary_conditions: Dirichlet value on a node outside Gamma_d");
      }
      lift.constrained_values[dof] = samples.values[k];
      assigned[dof] = 1;
    } else {
      if (!tags[site.index].neumann) {
        throw std::invalid_argument("apply_boundary_conditions: Neumann data on edge " + std::to_string(site.index) +
                                    " whose Neumann flag is unset");
      }
      edge_samples[site.index].push_back(samples.values[k]);
    }
  }
  for (int e = 0; e < mesh.num_edges(); ++e) {
    if (edge_samples[e].empty()) continue;
    const Edge& edge = mesh.edge(e);
    const Point a = mesh.vertex(edge.vertices[0]);
    const Point b = mesh.vertex(edge.vertices[1]);
    const EdgePolynomial q = project_L2_edge_samples(edge_samples[e], a, b, 1, samples.rule);
    const double sign = dot(boundary_outward_normal(mesh, e), edge.normal);
    lift.constrained_values[dofs.flux_dof(e, 0)] = sign * q(0.0);
    lift.constrained_values[dofs.flux_dof(e, 1)] = sign * q(1.0);
    assigned[dofs.flux_dof(e, 0)] = 1;
    assigned[dofs.flux_dof(e, 1)] = 1;
  }
  for (int i = 0; i < dofs.num_primal(); ++i) {
    if (dofs.constrained[i] && !assigned[i]) {
      throw std::invalid_argument("apply_boundary_conditions: constrained dof " + std::to_string(i) + " has no data");
    }
  }

  const Eigen::VectorXd s_c = stabilizer * lift.constrained_values;
  const Eigen::VectorXd b_c = constraint.matrix * lift.constrained_values;
  lift.rhs_dual.resize(dofs.num_free());
  for (int i = 0; i < dofs.num_free(); ++i) {
    lift.rhs_dual[i] = -s_c[dofs.free_dofs[i]];
  }
  lift.rhs_primal = constraint.load - b_c;
  return lift;
}

Eigen::VectorXd SaddleSystem::expand(const Eigen::VectorXd& free_values) const {
  Eigen::VectorXd full = constrained_values;
  for (int i = 0; i < dofs.num_free(); ++i) {
    full[dofs.free_dofs[i]] = free_values[i];
  }
  return full;
}

SaddleSystem build_saddle_system(const Mesh& mesh, std::span<const EdgeTag> tags, const ProblemData& problem,
                                 const QuadratureOptions& quad) {
  SaddleSystem sys;
  sys.dofs = build_dofmap(mesh, tags);
  const DofMap& d = sys.dofs;
  sys.stabilizer = assemble_stabilizer(mesh, d, gauss_legendre(quad.edge_points));
  sys.constraint = assemble_constraint(mesh, d, problem.load, triangle_quadrature(quad.triangle_degree));
  BoundaryLift lift = apply_boundary_conditions(problem.boundary, mesh, tags, d, sys.stabilizer, sys.constraint);
  sys.constrained_values = std::move(lift.constrained_values);

  const int nf = d.num_free();
  const int nt = d.num_triangles;
  std::vector<Triplet> sel;
  sel.reserve(static_cast<std::size_t>(nf));
  for (int i = 0; i < nf; ++i) sel.emplace_back(i, d.free_dofs[i], 1.0);
  SparseMatrix p(nf, d.num_primal());
  p.setFromTriplets(sel.begin(), sel.end());

  sys.stabilizer_free = p * sys.stabilizer * p.transpose();
  sys.constraint_free = sys.constraint.matrix * p.transpose();

  std::vector<Triplet> m;
  m.reserve(static_cast<std::size_t>(sys.stabilizer_free.nonZeros() + 2 * sys.constraint_free.nonZeros()));
  for (int k = 0; k < sys.stabilizer_free.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(sys.stabilizer_free, k); it; ++it) {
      m.emplace_back(it.row(), it.col(), it.value());
    }
  }
  for (int k = 0; k < sys.constraint_free.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(sys.constraint_free, k); it; ++it) {
      m.emplace_back(nf + it.row(), it.col(), it.value());
      m.emplace_back(it.col(), nf + it.row(), it.value());
    }
  }
  sys.matrix.resize(nf + nt, nf + nt);
  sys.matrix.setFromTriplets(m.begin(), m.end());

  sys.rhs.resize(nf + nt);
  sys.rhs.head(nf) = lift.rhs_dual;
  sys.rhs.tail(nt) = lift.rhs_primal;
  return sys;
}

ElementWeakFunction element_weak_function(const Mesh& mesh, int t, std::span<const double> node_values,
                                          std::span<const double> flux_values) {
  const ElementGeometry& geom = mesh.geometry(t);
  const auto nodes = mesh.p2_nodes(t);
  std::array<double, 6> nodal;
  for (int j = 0; j < 6; ++j) nodal[j] = node_values[nodes[j]];
  ElementWeakFunction v;
  v.v0 = p2::to_monomials(geom, nodal);
  const auto& edges = mesh.triangle_edges(t);
  for (int i = 0; i < 3; ++i) {
    const auto& [a, b] = geom.edge_endpoints[i];
    // Trace of a quadratic: exact from its values at t = 0, 1/2, 1.
    const double f0 = v.v0(a);
    const double fm = v.v0(0.5 * (a + b));
    const double f1 = v.v0(b);
    v.vb[i] = EdgePolynomial(2, a, b);
    v.vb[i].coefficients() = {f0, -3.0 * f0 + 4.0 * fm - f1, 2.0 * f0 - 4.0 * fm + 2.0 * f1};
    const double n0 = flux_values[2 * edges[i]];
    const double n1 = flux_values[2 * edges[i] + 1];
    v.vn[i] = EdgePolynomial(1, a, b);
    v.vn[i].coefficients() = {n0, n1 - n0};
  }
  return v;
}

}  // namespace pdwg
