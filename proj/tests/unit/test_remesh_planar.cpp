#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "hdremesh/deformation.hpp"
#include "hdremesh/errors.hpp"
#include "hdremesh/geometry.hpp"
#include "hdremesh/remesh.hpp"
#include "hdremesh/shapes.hpp"
#include "oracles.hpp"

using namespace hdremesh;

namespace {

std::vector<NodeIndex> outer_loop(const SurfaceMesh& m) {
    return boundary_loops(m).at(0);
}

std::vector<Vec2> boundary_polyline(const SurfaceMesh& m) {
    std::vector<Vec2> loop;
    for (NodeIndex n : outer_loop(m)) {
        loop.push_back(m.position(n, Configuration::current).head<2>());
    }
    return loop;
}

SurfaceMesh quadratic_square(double h) {
    SurfaceMesh m = shapes::square(3.0, h, 1);
    auto pts = m.positions(Configuration::current);
    for (auto& p : pts) {
        p = AnalyticDeformation::square_quadratic().evaluate(p);
    }
    m.set_positions(Configuration::current, pts);
    return m;
}

void expect_valid(const SurfaceMesh& old_mesh, const RemeshResult& r, double target) {
    const SurfaceMesh& m = r.mesh;
    EXPECT_NEAR(total_area(m, Configuration::current) / total_area(old_mesh, Configuration::current),
                1.0, 1e-6);
    const auto old_loop = boundary_polyline(old_mesh);
    for (NodeIndex n : outer_loop(m)) {
        EXPECT_LT(geometry::point_polyline_distance(m.position(n, Configuration::current).head<2>(),
                                                    old_loop),
                  1e-9);
    }
    EXPECT_NEAR(median_edge_length(m, Configuration::current) / target, 1.0, 0.25);
    EXPECT_GE(mesh_quality_summary(m, Configuration::current).median, 0.9);
}

} // namespace

TEST(RemeshPlanar, UndeformedSquare) {
    const SurfaceMesh old_mesh = oracle::grid_mesh(3.0, 3.0, 6, 6);
    RemeshConfig c;
    c.target_edge_length = 0.5;
    const RemeshResult r = remesh_planar(old_mesh, c);
    expect_valid(old_mesh, r, 0.5);
    for (NodeIndex n : outer_loop(r.mesh)) {
        const Vec3& p = r.mesh.position(n, Configuration::current);
        const double d = std::min({p.x(), p.y(), 3.0 - p.x(), 3.0 - p.y()});
        EXPECT_LT(std::abs(d), 1e-12);
    }
    EXPECT_TRUE(r.warnings.empty());
}

TEST(RemeshPlanar, DeformedSquareRegainsQuality) {
    const SurfaceMesh old_mesh = quadratic_square(0.1);
    EXPECT_LT(mesh_quality_summary(old_mesh, Configuration::current).median, 0.9);
    RemeshConfig c;
    c.target_edge_length = 0.2;
    expect_valid(old_mesh, remesh_planar(old_mesh, c), 0.2);
}

TEST(RemeshPlanar, NonConvexPolygon) {
    const std::vector<Vec2> l_shape{{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}};
    const planar::PlanarMesh pm = planar::generate_planar_mesh(l_shape, 0.15, 3);
    double area = 0.0;
    for (const auto& t : pm.triangles) {
        const double a = 0.5 * geometry::orient2d(pm.points[t[0]], pm.points[t[1]], pm.points[t[2]]);
        EXPECT_GT(a, 0.0);
        area += a;
    }
    EXPECT_NEAR(area, 3.0, 3e-6);
}

TEST(RemeshPlanar, TargetLargerThanDomainWarns) {
    const SurfaceMesh old_mesh = oracle::grid_mesh(1.0, 1.0, 2, 2);
    RemeshConfig c;
    c.target_edge_length = 10.0;
    const RemeshResult r = remesh_planar(old_mesh, c);
    EXPECT_GE(r.mesh.element_count(), 2u);
    EXPECT_FALSE(r.warnings.empty());
    EXPECT_NEAR(total_area(r.mesh, Configuration::current), 1.0, 1e-12);
}

TEST(RemeshPlanar, SelfIntersectingBoundaryThrows) {
    const std::vector<Vec2> bowtie{{0, 0}, {1, 1}, {1, 0}, {0, 1}};
    EXPECT_THROW(planar::generate_planar_mesh(bowtie, 0.1, 1), GeometryError);
    const std::vector<Vec2> flat{{0, 0}, {1, 0}, {2, 0}};
    EXPECT_THROW(planar::generate_planar_mesh(flat, 0.1, 1), GeometryError);
}

TEST(RemeshPlanar, DeterministicUnderSeed) {
    const SurfaceMesh old_mesh = quadratic_square(0.3);
    RemeshConfig c;
    c.target_edge_length = 0.3;
    c.seed = 17;
    const RemeshResult a = remesh_planar(old_mesh, c);
    const RemeshResult b = remesh_planar(old_mesh, c);
    EXPECT_EQ(a.mesh.positions(Configuration::current), b.mesh.positions(Configuration::current));
    EXPECT_EQ(a.mesh.triangles(), b.mesh.triangles());
}

TEST(RemeshPlanar, RejectsSurfaceMeshes) {
    RemeshConfig c;
    EXPECT_THROW(remesh_planar(shapes::sphere(1.0, 1), c), ArgumentError);
}

TEST(RemeshPlanar, RejectsInvalidTarget) {
    RemeshConfig c;
    c.target_edge_length = -1.0;
    EXPECT_THROW(remesh(oracle::grid_mesh(1, 1, 2, 2), c), ArgumentError);
}

TEST(ShouldRemesh, IntervalTrigger) {
    const SurfaceMesh m = oracle::grid_mesh(1, 1, 2, 2);
    RemeshConfig c;
    c.interval = 0.6;
    EXPECT_TRUE(should_remesh(m, c, 1.2, 0.6));
    EXPECT_FALSE(should_remesh(m, c, 1.1, 0.6));
}

TEST(ShouldRemesh, QualityTrigger) {
    RemeshConfig c;
    c.trigger = RemeshTrigger::aspect_ratio;
    c.aspect_ratio_threshold = 0.6;
    const double h = std::sqrt(3.0) / 2.0;
    const std::vector<Vec3> pts{{0, 0, 0}, {1, 0, 0}, {0.5, h, 0}, {1.5, h, 0}};
    const std::vector<Triangle> tris{{0, 1, 2}, {1, 3, 2}};
    SurfaceMesh good = SurfaceMesh::build(pts, tris, DimensionMode::planar2d);
    EXPECT_FALSE(should_remesh(good, c, 5.0, 0.0));

    // deform a square mid-run until its median AR is well below the threshold
    SurfaceMesh m = shapes::square(3.0, 0.3, 1);
    auto q = m.positions(Configuration::current);
    for (auto& p : q) {
        p = Vec3(p.x() * p.x() * p.x() / 3.0, 0.5 * p.y(), 0.0);
    }
    m.set_positions(Configuration::current, q);
    const double med = mesh_quality_summary(m, Configuration::current).median;
    EXPECT_EQ(should_remesh(m, c, 0.0, 0.0), med < 0.6);
    EXPECT_LT(med, 0.6);
}
