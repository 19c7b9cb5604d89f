#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "pdwg/mesh.hpp"

using namespace pdwg;

namespace {

const BoundarySegmentSpec kCauchyBottom{Side::bottom, 0.0, 1.0, true, true};

}  // namespace

TEST(Mesh, CountsForOneSquare) {
  const Mesh m = build_uniform_unit_square(1);
  EXPECT_EQ(m.num_vertices(), 4);
  EXPECT_EQ(m.num_edges(), 5);
  EXPECT_EQ(m.num_triangles(), 2);
}

TEST(Mesh, CountsForTwoByTwo) {
  const Mesh m = build_uniform_unit_square(2);
  EXPECT_EQ(m.num_vertices(), 9);
  EXPECT_EQ(m.num_edges(), 16);
  EXPECT_EQ(m.num_triangles(), 8);
  // Explicit enumeration: 6 horizontal, 6 vertical, 4 diagonals.
  int horizontal = 0, vertical = 0, diagonal = 0;
  for (int e = 0; e < m.num_edges(); ++e) {
    const Point a = m.vertex(m.edge(e).vertices[0]);
    const Point b = m.vertex(m.edge(e).vertices[1]);
    if (a.y == b.y) ++horizontal;
    else if (a.x == b.x) ++vertical;
    else ++diagonal;
  }
  EXPECT_EQ(horizontal, 6);
  EXPECT_EQ(vertical, 6);
  EXPECT_EQ(diagonal, 4);
}

TEST(Mesh, FinestTableMesh) { EXPECT_EQ(build_uniform_unit_square(32).num_triangles(), 2048); }

TEST(Mesh, RejectsZeroSubdivisions) { EXPECT_THROW(build_uniform_unit_square(0), std::invalid_argument); }

TEST(Mesh, DiagonalHasNegativeSlope) {
  const Mesh m = build_uniform_unit_square(1);
  for (int e = 0; e < m.num_edges(); ++e) {
    const Point a = m.vertex(m.edge(e).vertices[0]);
    const Point b = m.vertex(m.edge(e).vertices[1]);
    if (a.x != b.x && a.y != b.y) {
      EXPECT_LT((b.y - a.y) / (b.x - a.x), 0.0);
      EXPECT_FALSE(m.edge(e).on_boundary());
    }
  }
}

TEST(Mesh, NormalRotatesTangentClockwise) {
  const Mesh m = build_uniform_unit_square(3);
  for (int e = 0; e < m.num_edges(); ++e) {
    const Edge& edge = m.edge(e);
    ASSERT_LT(edge.vertices[0], edge.vertices[1]);
    const Point tau = m.vertex(edge.vertices[1]) - m.vertex(edge.vertices[0]);
    EXPECT_NEAR(edge.normal.x, tau.y / edge.length, 1e-15);
    EXPECT_NEAR(edge.normal.y, -tau.x / edge.length, 1e-15);
  }
}

class MeshInvariants : public ::testing::TestWithParam<int> {};

TEST_P(MeshInvariants, CountsAreaAndOrientation) {
  const int n = GetParam();
  const Mesh m = build_uniform_unit_square(n);
  EXPECT_EQ(m.num_vertices(), (n + 1) * (n + 1));
  EXPECT_EQ(m.num_edges(), 3 * n * n + 2 * n);
  EXPECT_EQ(m.num_triangles(), 2 * n * n);
  EXPECT_EQ(m.num_vertices() - m.num_edges() + m.num_triangles(), 1);
  double total = 0.0;
  for (int t = 0; t < m.num_triangles(); ++t) {
    const ElementGeometry& g = m.geometry(t);
    const auto& v = g.vertices;
    const double signed_area = 0.5 * ((v[1].x - v[0].x) * (v[2].y - v[0].y) - (v[2].x - v[0].x) * (v[1].y - v[0].y));
    EXPECT_GT(signed_area, 0.0);
    EXPECT_NEAR(g.area, 1.0 / (2.0 * n * n), 1e-15);
    EXPECT_NEAR(g.diameter, std::sqrt(2.0) / n, 1e-15);
    total += g.area;
  }
  EXPECT_NEAR(total, 1.0, 1e-14);
}

TEST_P(MeshInvariants, InteriorEdgesHaveOppositeSigns) {
  const Mesh m = build_uniform_unit_square(GetParam());
  std::vector<std::vector<int>> signs(static_cast<std::size_t>(m.num_edges()));
  for (int t = 0; t < m.num_triangles(); ++t) {
    for (int i = 0; i < 3; ++i) signs[m.triangle_edges(t)[i]].push_back(m.edge_signs(t)[i]);
  }
  for (int e = 0; e < m.num_edges(); ++e) {
    if (m.edge(e).on_boundary()) {
      ASSERT_EQ(signs[e].size(), 1u);
    } else {
      ASSERT_EQ(signs[e].size(), 2u);
      EXPECT_EQ(signs[e][0] + signs[e][1], 0);
    }
  }
}

TEST_P(MeshInvariants, ElementBoundaryCloses) {
  const Mesh m = build_uniform_unit_square(GetParam());
  for (int t = 0; t < m.num_triangles(); ++t) {
    const ElementGeometry& g = m.geometry(t);
    Point sum{0.0, 0.0};
    for (int i = 0; i < 3; ++i) sum = sum + (g.edge_signs[i] * g.edge_lengths[i]) * g.edge_normals[i];
    EXPECT_NEAR(sum.x, 0.0, 1e-15);
    EXPECT_NEAR(sum.y, 0.0, 1e-15);
  }
}

TEST_P(MeshInvariants, OutwardNormalPointsAwayFromCentroid) {
  const Mesh m = build_uniform_unit_square(GetParam());
  for (int t = 0; t < m.num_triangles(); ++t) {
    const ElementGeometry& g = m.geometry(t);
    for (int i = 0; i < 3; ++i) {
      EXPECT_GT(dot(g.outward_normal(i), g.edge_point(i, 0.5) - g.centroid), 0.0);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Sizes, MeshInvariants, ::testing::Values(1, 2, 3, 4, 7, 16),
                         [](const auto& info) { return "n" + std::to_string(info.param); });

TEST(Geometry, RejectsClockwiseAndDegenerate) {
  EXPECT_THROW(make_element_geometry({Point{0, 0}, Point{0, 1}, Point{1, 0}}), std::invalid_argument);
  EXPECT_THROW(make_element_geometry({Point{0, 0}, Point{1, 1}, Point{2, 2}}), std::invalid_argument);
}

TEST(ClassifyBoundary, CauchyBottomOnTwoByTwo) {
  const Mesh m = build_uniform_unit_square(2);
  const auto tags = classify_boundary(m, std::span(&kCauchyBottom, 1));
  int tagged = 0;
  for (int e = 0; e < m.num_edges(); ++e) {
    if (tags[e].dirichlet || tags[e].neumann) {
      ++tagged;
      EXPECT_TRUE(tags[e].dirichlet && tags[e].neumann);
      EXPECT_EQ(m.vertex(m.edge(e).vertices[0]).y, 0.0);
      EXPECT_EQ(m.vertex(m.edge(e).vertices[1]).y, 0.0);
    }
  }
  EXPECT_EQ(tagged, 2);
}

TEST(ClassifyBoundary, FlagsFromSeveralSegmentsCombine) {
  const Mesh m = build_uniform_unit_square(4);
  const BoundarySegmentSpec specs[] = {{Side::left, 0.0, 1.0, true, false}, {Side::left, 0.0, 1.0, false, true}};
  const auto tags = classify_boundary(m, specs);
  int cauchy = 0;
  for (const auto& t : tags) cauchy += t.dirichlet && t.neumann;
  EXPECT_EQ(cauchy, 4);
}

TEST(ClassifyBoundary, HalfBottomSegment) {
  const Mesh m = build_uniform_unit_square(16);
  const BoundarySegmentSpec half{Side::bottom, 0.0, 0.5, true, true};
  const auto tags = classify_boundary(m, std::span(&half, 1));
  int tagged = 0;
  for (int e = 0; e < m.num_edges(); ++e) {
    if (!tags[e].dirichlet) continue;
    ++tagged;
    EXPECT_LE(m.vertex(m.edge(e).vertices[1]).x, 0.5);
  }
  EXPECT_EQ(tagged, 8);
}

TEST(ClassifyBoundary, InteriorEdgesNeverTagged) {
  const Mesh m = build_uniform_unit_square(3);
  const BoundarySegmentSpec all[] = {{Side::bottom, 0, 1, true, true}, {Side::top, 0, 1, true, true},
                                     {Side::left, 0, 1, true, true}, {Side::right, 0, 1, true, true}};
  const auto tags = classify_boundary(m, all);
  for (int e = 0; e < m.num_edges(); ++e) {
    EXPECT_EQ(tags[e].dirichlet, m.edge(e).on_boundary());
  }
}

TEST(ClassifyBoundary, RejectsMisalignedInterval) {
  const Mesh m = build_uniform_unit_square(3);
  const BoundarySegmentSpec half{Side::bottom, 0.0, 0.5, true, true};
  EXPECT_THROW(classify_boundary(m, std::span(&half, 1)), std::invalid_argument);
  const BoundarySegmentSpec reversed{Side::bottom, 1.0, 0.0, true, true};
  EXPECT_THROW(classify_boundary(m, std::span(&reversed, 1)), std::invalid_argument);
}

TEST(Side, ParseRoundTrip) {
  for (Side s : {Side::bottom, Side::top, Side::left, Side::right}) EXPECT_EQ(parse_side(to_string(s)), s);
  EXPECT_THROW(parse_side("middle"), std::invalid_argument);
}
