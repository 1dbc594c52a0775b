#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "hdremesh/errors.hpp"
#include "hdremesh/mesh.hpp"
#include "hdremesh/shapes.hpp"
#include "oracles.hpp"

using namespace hdremesh;

namespace {

SurfaceMesh unit_right_triangle() {
    const std::vector<Vec3> pts{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
    const std::vector<Triangle> tris{{0, 1, 2}};
    return SurfaceMesh::build(pts, tris, DimensionMode::planar2d);
}

SurfaceMesh two_triangles() {
    const std::vector<Vec3> pts{{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}};
    const std::vector<Triangle> tris{{0, 1, 2}, {0, 2, 3}};
    return SurfaceMesh::build(pts, tris, DimensionMode::planar2d);
}

} // namespace

TEST(BuildMesh, SingleTriangleHasThreeBoundaryEdges) {
    const SurfaceMesh m = unit_right_triangle();
    EXPECT_EQ(m.element_count(), 1u);
    EXPECT_EQ(m.edge_count(), 3u);
    EXPECT_EQ(m.boundary_edge_count(), 3u);
    EXPECT_FALSE(m.is_closed());
}

TEST(BuildMesh, TwoTrianglesShareOneInteriorEdge) {
    const SurfaceMesh m = two_triangles();
    EXPECT_EQ(m.edge_count(), 5u);
    std::size_t interior = 0;
    for (const auto& e : m.edges()) {
        interior += e.is_boundary() ? 0 : 1;
    }
    EXPECT_EQ(interior, 1u);
}

TEST(BuildMesh, GeneratedSquareEdgesAreManifold) {
    const SurfaceMesh m = shapes::square(3.0, 0.5, 1);
    std::vector<std::size_t> count(m.edge_count(), 0);
    for (std::size_t e = 0; e < m.element_count(); ++e) {
        for (EdgeIndex k : m.element_edges(e)) {
            ++count[k];
        }
    }
    std::size_t total = 0;
    for (std::size_t k = 0; k < m.edge_count(); ++k) {
        total += count[k];
        EXPECT_EQ(count[k], m.edge(k).incident_count());
    }
    EXPECT_EQ(total, 3 * m.element_count());
}

TEST(BuildMesh, WindingIsConsistentOnInteriorEdges) {
    const SurfaceMesh m = shapes::square(3.0, 0.5, 2);
    for (const auto& edge : m.edges()) {
        if (edge.is_boundary()) {
            continue;
        }
        int direction = 0;
        for (ElementIndex e : edge.elements) {
            const Triangle& t = m.triangle(e);
            for (int i = 0; i < 3; ++i) {
                if (t[i] == edge.nodes[0] && t[(i + 1) % 3] == edge.nodes[1]) {
                    direction += 1;
                }
                if (t[i] == edge.nodes[1] && t[(i + 1) % 3] == edge.nodes[0]) {
                    direction -= 1;
                }
            }
        }
        EXPECT_EQ(direction, 0);
    }
}

TEST(BuildMesh, RejectsRepeatedVertex) {
    const std::vector<Vec3> pts{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
    const std::vector<Triangle> tris{{0, 1, 1}};
    EXPECT_THROW(SurfaceMesh::build(pts, tris, DimensionMode::planar2d), TopologyError);
}

TEST(BuildMesh, RejectsDuplicateTriangleNamingIt) {
    const std::vector<Vec3> pts{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
    const std::vector<Triangle> tris{{0, 1, 2}, {1, 2, 0}};
    try {
        SurfaceMesh::build(pts, tris, DimensionMode::planar2d);
        FAIL() << "expected TopologyError";
    } catch (const TopologyError& err) {
        ASSERT_TRUE(err.element().has_value());
        EXPECT_EQ(*err.element(), 1u);
    }
}

TEST(BuildMesh, RejectsNonManifoldEdge) {
    const std::vector<Vec3> pts{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}};
    const std::vector<Triangle> tris{{0, 1, 2}, {1, 0, 3}, {0, 1, 4}};
    EXPECT_THROW(SurfaceMesh::build(pts, tris, DimensionMode::surface3d), TopologyError);
}

TEST(BuildMesh, RejectsDegenerateTriangle) {
    const std::vector<Vec3> pts{{0, 0, 0}, {1, 0, 0}, {2, 0, 0}};
    const std::vector<Triangle> tris{{0, 1, 2}};
    EXPECT_THROW(SurfaceMesh::build(pts, tris, DimensionMode::planar2d), DegeneracyError);
}

TEST(BuildMesh, RejectsOutOfRangeIndex) {
    const std::vector<Vec3> pts{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
    const std::vector<Triangle> tris{{0, 1, 3}};
    EXPECT_THROW(SurfaceMesh::build(pts, tris, DimensionMode::planar2d), TopologyError);
}

TEST(BuildMesh, RejectsNonzeroZInPlanarMode) {
    const std::vector<Vec3> pts{{0, 0, 0}, {1, 0, 0}, {0, 1, 1e-3}};
    const std::vector<Triangle> tris{{0, 1, 2}};
    EXPECT_THROW(SurfaceMesh::build(pts, tris, DimensionMode::planar2d), ArgumentError);
}

TEST(BuildMesh, ConfigurationsStartEqual) {
    const SurfaceMesh m = two_triangles();
    for (const auto& n : m.nodes()) {
        EXPECT_EQ(n.initial, n.current);
    }
}

TEST(ElementBasis, AxisAlignedRightTriangle) {
    const ElementBasis b = element_basis(unit_right_triangle(), 0, Configuration::current);
    EXPECT_EQ(b.origin, Vec3(0, 0, 0));
    EXPECT_EQ(b.u1, Vec3(1, 0, 0));
    EXPECT_EQ(b.u2, Vec3(0, 1, 0));
    EXPECT_NEAR((b.normal - Vec3(0, 0, 1)).norm(), 0.0, 1e-15);
}

TEST(ElementBasis, RotatedAboutZ) {
    const std::vector<Vec3> pts{{0, 0, 0}, {0, 1, 0}, {-1, 0, 0}};
    const std::vector<Triangle> tris{{0, 1, 2}};
    const SurfaceMesh m = SurfaceMesh::build(pts, tris, DimensionMode::planar2d);
    const ElementBasis b = element_basis(m, 0, Configuration::current);
    EXPECT_NEAR((b.u1 - Vec3(0, 1, 0)).norm(), 0.0, 1e-15);
    EXPECT_NEAR(b.normal.norm(), 1.0, 1e-12);
}

TEST(ElementBasis, SkewTriangle) {
    const std::vector<Vec3> pts{{0, 0, 0}, {2, 0, 0}, {1, 1, 0}};
    const std::vector<Triangle> tris{{0, 1, 2}};
    const SurfaceMesh m = SurfaceMesh::build(pts, tris, DimensionMode::planar2d);
    const ElementBasis b = element_basis(m, 0, Configuration::current);
    EXPECT_EQ(b.u1, Vec3(2, 0, 0));
    EXPECT_EQ(b.u2, Vec3(1, 1, 0));
    EXPECT_NEAR((b.normal - Vec3(0, 0, 1)).norm(), 0.0, 1e-15);
}

TEST(ElementBasis, NormalsAreUnitOnCurvedSurface) {
    const SurfaceMesh m = shapes::sphere(1.7, 3);
    for (std::size_t e = 0; e < m.element_count(); ++e) {
        const ElementBasis b = element_basis(m, e, Configuration::current);
        EXPECT_LT(std::abs(b.normal.norm() - 1.0), 1e-12);
        EXPECT_NEAR(b.normal.dot(b.u1), 0.0, 1e-12);
        EXPECT_NEAR(b.normal.dot(b.u2), 0.0, 1e-12);
    }
}

TEST(ElementBasis, DegenerateCurrentConfigurationReportsElement) {
    const std::vector<Vec3> initial{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
    const std::vector<Vec3> current{{0, 0, 0}, {1, 0, 0}, {2, 0, 0}};
    const std::vector<Triangle> tris{{0, 1, 2}};
    EXPECT_THROW(SurfaceMesh::build_with_history(initial, current, tris, DimensionMode::planar2d),
                 DegeneracyError);
}

TEST(AspectRatio, EquilateralIsOne) {
    const Vec3 a(0, 0, 0), b(1, 0, 0), c(0.5, std::sqrt(3.0) / 2.0, 0);
    EXPECT_NEAR(aspect_ratio(a, b, c), 1.0, 1e-12);
}

TEST(AspectRatio, RightIsoscelesMatchesInAndCircumradius) {
    const double r_in = (2.0 - std::sqrt(2.0)) / 2.0;
    const double r_out = std::sqrt(2.0) / 2.0;
    const double expected = 2.0 * r_in / r_out;
    EXPECT_NEAR(expected, 0.828427, 1e-6);
    EXPECT_NEAR(aspect_ratio(Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 1, 0)), expected, 1e-12);
}

TEST(AspectRatio, NearCollinearIsTiny) {
    EXPECT_LT(aspect_ratio(Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0.5, 1e-9, 0)), 1e-8);
}

TEST(AspectRatio, ZeroAreaIsZero) {
    EXPECT_EQ(aspect_ratio(Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(2, 0, 0)), 0.0);
}

TEST(AspectRatio, MatchesHeronOracleOnRandomTriangles) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int i = 0; i < 1000; ++i) {
        const Vec3 a(u(rng), u(rng), u(rng)), b(u(rng), u(rng), u(rng)), c(u(rng), u(rng), u(rng));
        const double expected =
            oracle::aspect_ratio_from_sides((b - c).norm(), (c - a).norm(), (a - b).norm());
        EXPECT_NEAR(aspect_ratio(a, b, c), expected, 1e-9);
    }
}

TEST(AspectRatio, ScaleAndCongruenceInvariant) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        const Vec3 a(u(rng), u(rng), u(rng)), b(u(rng), u(rng), u(rng)), c(u(rng), u(rng), u(rng));
        const double ar = aspect_ratio(a, b, c);
        const double s = std::exp(3.0 * u(rng));
        EXPECT_NEAR(aspect_ratio(s * a, s * b, s * c), ar, 1e-10);
        const Mat3 rot =
            Eigen::AngleAxisd(std::numbers::pi * u(rng), Vec3(u(rng), u(rng), u(rng)).normalized())
                .toRotationMatrix();
        const Vec3 t(u(rng), u(rng), u(rng));
        EXPECT_NEAR(aspect_ratio(rot * a + t, rot * b + t, rot * c + t), ar, 1e-10);
    }
}

TEST(Centroid, MeanOfVertices) {
    const std::vector<Vec3> pts{{0, 0, 0}, {3, 0, 0}, {0, 3, 0}};
    const std::vector<Triangle> tris{{0, 1, 2}};
    const SurfaceMesh m = SurfaceMesh::build(pts, tris, DimensionMode::planar2d);
    EXPECT_NEAR((centroid(m, 0, Configuration::current) - Vec3(1, 1, 0)).norm(), 0.0, 1e-15);
    EXPECT_EQ(centroid(m, 0, Configuration::current), centroid(m, 0, Configuration::initial));
}

TEST(QualitySummary, EquilateralMesh) {
    const double h = std::sqrt(3.0) / 2.0;
    const std::vector<Vec3> pts{{0, 0, 0}, {1, 0, 0}, {0.5, h, 0}, {1.5, h, 0}};
    const std::vector<Triangle> tris{{0, 1, 2}, {1, 3, 2}};
    const SurfaceMesh m = SurfaceMesh::build(pts, tris, DimensionMode::planar2d);
    const QuantileSummary q = mesh_quality_summary(m, Configuration::current);
    EXPECT_NEAR(q.median, 1.0, 1e-12);
    EXPECT_NEAR(q.iqr(), 0.0, 1e-12);
}

TEST(QualitySummary, TwoElementMedianIsMean) {
    // two triangles with different shapes; median must be the mean of both ARs
    const std::vector<Vec3> pts{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {3, 0.2, 0}};
    const std::vector<Triangle> tris{{0, 1, 2}, {1, 3, 2}};
    const SurfaceMesh m = SurfaceMesh::build(pts, tris, DimensionMode::planar2d);
    const double a0 = aspect_ratio(m, 0, Configuration::current);
    const double a1 = aspect_ratio(m, 1, Configuration::current);
    EXPECT_NEAR(mesh_quality_summary(m, Configuration::current).median, 0.5 * (a0 + a1), 1e-15);
}

TEST(QualitySummary, QuadraticDeformationLowersMedian) {
    SurfaceMesh m = shapes::square(3.0, 0.2, 1);
    auto pts = m.positions(Configuration::current);
    for (auto& p : pts) {
        p = Vec3(p.x() * p.x(), p.y() * p.y(), 0.0);
    }
    m.set_positions(Configuration::current, pts);
    EXPECT_LT(mesh_quality_summary(m, Configuration::current).median,
              mesh_quality_summary(m, Configuration::initial).median);
}

TEST(MeshMeasures, TotalAreaAndBoundaryLoop) {
    const SurfaceMesh m = oracle::grid_mesh(3.0, 2.0, 6, 4);
    EXPECT_NEAR(total_area(m, Configuration::current), 6.0, 1e-12);
    const auto loops = boundary_loops(m);
    ASSERT_EQ(loops.size(), 1u);
    EXPECT_EQ(loops[0].size(), 20u);
    EXPECT_NEAR(median_edge_length(oracle::grid_mesh(1.0, 1.0, 4, 4), Configuration::current),
                0.25, 1e-12);
}

TEST(MeshMeasures, SetPositionsRejectsNonFinite) {
    SurfaceMesh m = two_triangles();
    auto pts = m.positions(Configuration::current);
    pts[2].x() = std::nan("");
    EXPECT_THROW(m.set_positions(Configuration::current, pts), ArgumentError);
}

TEST(MeshMeasures, ClosedSphereHasNoBoundary) {
    const SurfaceMesh m = shapes::sphere(1.0, 2);
    EXPECT_TRUE(m.is_closed());
    EXPECT_TRUE(boundary_loops(m).empty());
}
