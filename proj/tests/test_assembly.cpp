#include <gtest/gtest.h>

#include <cmath>

#include "pdwg/assembly.hpp"
#include "pdwg/norms.hpp"
#include "pdwg/problems.hpp"
#include "pdwg/verify.hpp"

using namespace pdwg;

namespace {

const BoundarySegmentSpec kAllCauchy[] = {{Side::bottom, 0, 1, true, true},
                                          {Side::top, 0, 1, true, true},
                                          {Side::left, 0, 1, true, true},
                                          {Side::right, 0, 1, true, true}};

SaddleSystem exact_system(const Mesh& mesh, std::span<const EdgeTag> tags, const ManufacturedSolution& u) {
  return build_saddle_system(mesh, tags, {u.laplacian, sample_exact_boundary_data(u, mesh, tags, gauss_legendre(4))});
}

// Full primal vector of the C0 interpolant of u with exact projected fluxes.
Eigen::VectorXd interpolant(const Mesh& mesh, const ManufacturedSolution& u) {
  const ProjectedExact q = project_exact(u, mesh);
  Eigen::VectorXd v(mesh.num_p2_nodes() + 2 * mesh.num_edges());
  for (int node = 0; node < mesh.num_p2_nodes(); ++node) v[node] = u(mesh.p2_node(node));
  v.tail(2 * mesh.num_edges()) = q.flux;
  return v;
}

}  // namespace

TEST(DofMap, CountsAndPartition) {
  const Mesh m = build_uniform_unit_square(3);
  const auto tags = classify_boundary(m, find_case("case1").segments);
  const DofMap d = build_dofmap(m, tags);
  EXPECT_EQ(d.num_nodes, m.num_vertices() + m.num_edges());
  EXPECT_EQ(d.num_primal(), d.num_nodes + 2 * m.num_edges());
  EXPECT_EQ(d.num_triangles, m.num_triangles());
  int constrained = 0;
  for (int i = 0; i < d.num_primal(); ++i) {
    constrained += d.constrained[i];
    EXPECT_EQ(d.free_index[i] < 0, bool(d.constrained[i]));
  }
  EXPECT_EQ(constrained + d.num_free(), d.num_primal());
}

TEST(DofMap, CornerOfDirichletClosureIsConstrained) {
  // Dirichlet only on the bottom: the corner (1,0) is constrained although
  // the right side carries no Dirichlet flag.
  const Mesh m = build_uniform_unit_square(2);
  const BoundarySegmentSpec specs[] = {{Side::bottom, 0, 1, true, false}, {Side::right, 0, 1, false, true}};
  const DofMap d = build_dofmap(m, classify_boundary(m, specs));
  EXPECT_TRUE(d.constrained[d.node_dof(2)]);
  EXPECT_FALSE(d.constrained[d.node_dof(5)]);
}

TEST(SaddleSystem, AllCauchySingleSquareDimension) {
  const Mesh m = build_uniform_unit_square(1);
  const auto tags = classify_boundary(m, kAllCauchy);
  const SaddleSystem s = exact_system(m, tags, find_solution("quad"));
  // Only the centre node and the two diagonal fluxes remain free.
  EXPECT_EQ(s.num_free(), 3);
  EXPECT_EQ(s.matrix.rows(), s.num_free() + 2);
}

TEST(Stabilizer, VanishesOnGlobalQuadratic) {
  const Mesh m = build_uniform_unit_square(4);
  const DofMap d = build_dofmap(m, std::vector<EdgeTag>(m.num_edges()));
  const SparseMatrix s = assemble_stabilizer(m, d, gauss_legendre(4));
  const ManufacturedSolution u{"x2+y2", [](Point p) { return p.x * p.x + p.y * p.y; },
                               [](Point p) { return Point{2 * p.x, 2 * p.y}; }, [](Point) { return 4.0; }};
  const Eigen::VectorXd v = interpolant(m, u);
  // Roundoff scale of the quadratic form: |v|^T |S| |v|.
  const Eigen::VectorXd av = v.cwiseAbs();
  const double scale = av.dot(s.cwiseAbs() * av);
  EXPECT_LE(std::abs(v.dot(s * v)), 1e-14 * scale);
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(d.num_primal());
  EXPECT_EQ(zero.dot(s * zero), 0.0);
}

TEST(Stabilizer, UnitFluxOnDiagonal) {
  const Mesh m = build_uniform_unit_square(1);
  const DofMap d = build_dofmap(m, std::vector<EdgeTag>(m.num_edges()));
  const SparseMatrix s = assemble_stabilizer(m, d, gauss_legendre(4));
  Eigen::VectorXd v = Eigen::VectorXd::Zero(d.num_primal());
  for (int e = 0; e < m.num_edges(); ++e) {
    if (!m.edge(e).on_boundary()) v[d.flux_dof(e, 0)] = v[d.flux_dof(e, 1)] = 1.0;
  }
  EXPECT_NEAR(v.dot(s * v), 2.0, 1e-14);
}

TEST(Stabilizer, MatchesElementwiseLocalForm) {
  const Mesh m = build_uniform_unit_square(3);
  const DofMap d = build_dofmap(m, std::vector<EdgeTag>(m.num_edges()));
  const SparseMatrix s = assemble_stabilizer(m, d, gauss_legendre(4));
  UniformSource rng(3);
  Eigen::VectorXd v(d.num_primal());
  for (int i = 0; i < v.size(); ++i) v[i] = rng.next() - 0.5;
  const std::span<const double> all(v.data(), static_cast<std::size_t>(v.size()));
  double local = 0.0;
  for (int t = 0; t < m.num_triangles(); ++t) {
    const auto w = element_weak_function(m, t, all.first(d.num_nodes), all.subspan(d.num_nodes));
    local += local_stabilizer(w, w, m.geometry(t));
  }
  EXPECT_NEAR(v.dot(s * v), local, 1e-12 * local);
}

TEST(Constraint, ExactFluxesOfQuadraticReproduceLoad) {
  const Mesh m = build_uniform_unit_square(4);
  const DofMap d = build_dofmap(m, std::vector<EdgeTag>(m.num_edges()));
  const ConstraintBlock b = assemble_constraint(m, d, [](Point) { return 4.0; }, triangle_quadrature(6));
  const Eigen::VectorXd v = interpolant(m, find_solution("quad"));
  EXPECT_LE((b.matrix * v - b.load).cwiseAbs().maxCoeff(), 1e-13);
  const ConstraintBlock zero = assemble_constraint(m, d, [](Point) { return 0.0; }, triangle_quadrature(6));
  EXPECT_EQ((zero.matrix * Eigen::VectorXd::Zero(d.num_primal()) - zero.load).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Constraint, UnitOutwardFluxRowIsPerimeter) {
  const Mesh m = build_uniform_unit_square(1);
  const DofMap d = build_dofmap(m, std::vector<EdgeTag>(m.num_edges()));
  const ConstraintBlock b = assemble_constraint(m, d, [](Point) { return 0.0; }, triangle_quadrature(2));
  Eigen::VectorXd v = Eigen::VectorXd::Zero(d.num_primal());
  for (int i = 0; i < 3; ++i) {
    const int e = m.triangle_edges(0)[i];
    v[d.flux_dof(e, 0)] = v[d.flux_dof(e, 1)] = m.edge_signs(0)[i];
  }
  EXPECT_NEAR((b.matrix * v)[0], 2.0 + std::sqrt(2.0), 1e-15);
}

TEST(BoundaryConditions, HomogeneousDataGivesZeroLift) {
  const Mesh m = build_uniform_unit_square(3);
  const auto tags = classify_boundary(m, find_case("case1").segments);
  const ManufacturedSolution zero{"zero", [](Point) { return 0.0; }, [](Point) { return Point{}; },
                                  [](Point) { return 0.0; }};
  const SaddleSystem s = exact_system(m, tags, zero);
  EXPECT_EQ(s.constrained_values.cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(s.rhs.cwiseAbs().maxCoeff(), 0.0);
}

TEST(BoundaryConditions, NeumannTopEdgesAreFlippedProjections) {
  // g2 = sin(x) cos(1) on y = 1; n_e points down on horizontal edges.
  const Mesh m = build_uniform_unit_square(2);
  const auto tags = classify_boundary(m, find_case("case1").segments);
  const SaddleSystem s = exact_system(m, tags, find_solution("sinsin"));
  const double expected[2][2] = {{0.0022245980630518293, 0.26234509829335584},
                                 {0.2662496352280545, 0.46268356498238167}};
  int found = 0;
  for (int e = 0; e < m.num_edges(); ++e) {
    const Edge& edge = m.edge(e);
    if (m.vertex(edge.vertices[0]).y != 1.0 || m.vertex(edge.vertices[1]).y != 1.0) continue;
    ASSERT_DOUBLE_EQ(edge.normal.y, -1.0);
    const int k = m.vertex(edge.vertices[0]).x < 0.25 ? 0 : 1;
    // Four Gauss points on a P1 projection of a smooth function.
    EXPECT_NEAR(s.constrained_values[s.dofs.flux_dof(e, 0)], -expected[k][0], 1e-7);
    EXPECT_NEAR(s.constrained_values[s.dofs.flux_dof(e, 1)], -expected[k][1], 1e-7);
    ++found;
  }
  EXPECT_EQ(found, 2);
}

TEST(BoundaryConditions, RejectsNeumannDataWithoutFlag) {
  const Mesh m = build_uniform_unit_square(2);
  const auto with_top = classify_boundary(m, find_case("case1").segments);
  const auto without_top = classify_boundary(m, find_case("case2").segments);
  const auto& u = find_solution("sinsin");
  ProblemData data{u.laplacian, sample_exact_boundary_data(u, m, with_top, gauss_legendre(4))};
  EXPECT_THROW(build_saddle_system(m, without_top, data), std::invalid_argument);
}

TEST(BoundaryConditions, RejectsMissingData) {
  const Mesh m = build_uniform_unit_square(2);
  const auto tags = classify_boundary(m, find_case("case1").segments);
  const auto& u = find_solution("sinsin");
  ProblemData data{u.laplacian, sample_exact_boundary_data(u, m, tags, gauss_legendre(4))};
  data.boundary.sites.pop_back();
  data.boundary.values.pop_back();
  EXPECT_THROW(build_saddle_system(m, tags, data), std::invalid_argument);
}

class SystemStructure : public ::testing::TestWithParam<const char*> {};

TEST_P(SystemStructure, SymmetricAndSemidefinite) {
  const Mesh m = build_uniform_unit_square(4);
  const auto tags = classify_boundary(m, find_case(GetParam()).segments);
  const SaddleSystem s = exact_system(m, tags, find_solution("sinsin"));
  EXPECT_LE(symmetry_defect(s.matrix), 1e-14);
  EXPECT_GE(min_quadratic_form(s.stabilizer_free, 100, 5), -1e-12);
}

TEST_P(SystemStructure, QuadraticInterpolantSatisfiesSystem) {
  for (int n : {1, 2, 4, 8}) {
    const Mesh m = build_uniform_unit_square(n);
    const auto tags = classify_boundary(m, find_case(GetParam()).segments);
    const auto& u = find_solution("quad");
    EXPECT_LE(consistency_residual(m, exact_system(m, tags, u), u), 1e-10) << "n=" << n;
  }
}

INSTANTIATE_TEST_SUITE_P(Cases, SystemStructure, ::testing::Values("case1", "case2", "case3", "case4", "case5"),
                         [](const auto& info) { return std::string(info.param); });

TEST(SaddleSystem, AssemblyIsBitReproducible) {
  const Mesh m = build_uniform_unit_square(4);
  const auto tags = classify_boundary(m, find_case("case1").segments);
  const SaddleSystem a = exact_system(m, tags, find_solution("coscos"));
  const SaddleSystem b = exact_system(m, tags, find_solution("coscos"));
  EXPECT_EQ((Eigen::MatrixXd(a.matrix) - Eigen::MatrixXd(b.matrix)).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ((a.rhs - b.rhs).cwiseAbs().maxCoeff(), 0.0);
}

TEST(ElementWeakFunction, InterpolantOfQuadraticIsExact) {
  const Mesh m = build_uniform_unit_square(2);
  const auto& u = find_solution("quad");
  const Eigen::VectorXd v = interpolant(m, u);
  const std::span<const double> all(v.data(), static_cast<std::size_t>(v.size()));
  for (int t = 0; t < m.num_triangles(); ++t) {
    const auto w = element_weak_function(m, t, all.first(m.num_p2_nodes()), all.subspan(m.num_p2_nodes()));
    const ElementGeometry& g = m.geometry(t);
    EXPECT_NEAR(w.v0(g.centroid), u(g.centroid), 1e-13);
    for (int i = 0; i < 3; ++i) {
      EXPECT_NEAR(w.vb[i](0.3), u(g.edge_point(i, 0.3)), 1e-13);
      EXPECT_NEAR(w.vn[i](0.3), dot(u.gradient(g.edge_point(i, 0.3)), g.edge_normals[i]), 1e-12);
    }
  }
}
