#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "hdremesh/deformation.hpp"
#include "hdremesh/remesh.hpp"
#include "hdremesh/shapes.hpp"
#include "oracles.hpp"

using namespace hdremesh;

namespace {

double max_distance_to(const SurfaceMesh& target, const SurfaceMesh& m) {
    double worst = 0.0;
    for (std::size_t n = 0; n < m.node_count(); ++n) {
        worst = std::max(worst, oracle::nearest_triangle(target, m.position(n, Configuration::current))
                                    .distance_squared);
    }
    return std::sqrt(worst);
}

SurfaceMesh deformed_cylinder(double h) {
    SurfaceMesh m = shapes::cylinder(1.0, 2.0 * std::numbers::pi, h, 1);
    auto pts = m.positions(Configuration::current);
    for (auto& p : pts) {
        p = AnalyticDeformation::cylinder_sinusoidal().evaluate(p);
    }
    m.set_positions(Configuration::current, pts);
    return m;
}

} // namespace

TEST(RemeshSurface, SphereStaysOnOldSurface) {
    const SurfaceMesh old_mesh = shapes::sphere(1.0, 3);
    RemeshConfig c;
    c.target_edge_length = 0.5;
    const RemeshResult r = remesh_surface(old_mesh, c);
    EXPECT_TRUE(r.mesh.is_closed());
    EXPECT_LE(max_distance_to(old_mesh, r.mesh), 0.1 * c.target_edge_length);
    EXPECT_GE(mesh_quality_summary(r.mesh, Configuration::current).median, 0.85);
}

TEST(RemeshSurface, DeformedCylinderRegainsQuality) {
    const SurfaceMesh old_mesh = deformed_cylinder(0.1);
    RemeshConfig c;
    c.target_edge_length = 0.15;
    const RemeshResult r = remesh_surface(old_mesh, c);
    EXPECT_GE(mesh_quality_summary(r.mesh, Configuration::current).median, 0.85);
    EXPECT_LE(max_distance_to(old_mesh, r.mesh), 0.1 * c.target_edge_length);
    EXPECT_NEAR(r.achieved_median_edge_length / c.target_edge_length, 1.0, 0.25);
}

TEST(RemeshSurface, BoundaryLoopsArePreserved) {
    const SurfaceMesh old_mesh = deformed_cylinder(0.2);
    RemeshConfig c;
    c.target_edge_length = 0.25;
    const RemeshResult r = remesh_surface(old_mesh, c);
    const auto old_loops = boundary_loops(old_mesh);
    const auto new_loops = boundary_loops(r.mesh);
    ASSERT_EQ(new_loops.size(), old_loops.size());
    for (const auto& loop : new_loops) {
        for (NodeIndex n : loop) {
            const Vec3& p = r.mesh.position(n, Configuration::current);
            double best = std::numeric_limits<double>::infinity();
            for (const auto& old_loop : old_loops) {
                for (std::size_t i = 0; i < old_loop.size(); ++i) {
                    best = std::min(best, oracle::segment_distance_squared(
                                              p, old_mesh.position(old_loop[i], Configuration::current),
                                              old_mesh.position(old_loop[(i + 1) % old_loop.size()],
                                                                Configuration::current)));
                }
            }
            EXPECT_LT(std::sqrt(best), 1e-9);
        }
    }
}

TEST(RemeshSurface, TargetAtCurrentEdgeLengthKeepsElementCount) {
    const SurfaceMesh old_mesh = shapes::capsule(1.0, 3.0, 0.3, 2);
    RemeshConfig c;
    c.target_edge_length = median_edge_length(old_mesh, Configuration::current);
    const RemeshResult r = remesh_surface(old_mesh, c);
    const double ratio = static_cast<double>(r.mesh.element_count()) /
                         static_cast<double>(old_mesh.element_count());
    EXPECT_GT(ratio, 0.5);
    EXPECT_LT(ratio, 2.0);
}

TEST(RemeshSurface, Deterministic) {
    const SurfaceMesh old_mesh = deformed_cylinder(0.3);
    RemeshConfig c;
    c.target_edge_length = 0.2;
    const RemeshResult a = remesh_surface(old_mesh, c);
    const RemeshResult b = remesh_surface(old_mesh, c);
    EXPECT_EQ(a.mesh.positions(Configuration::current), b.mesh.positions(Configuration::current));
    EXPECT_EQ(a.mesh.triangles(), b.mesh.triangles());
}

TEST(RemeshSurface, DispatchUsesSurfaceModeForSurfaces) {
    const SurfaceMesh old_mesh = shapes::sphere(1.0, 2);
    RemeshConfig c;
    c.target_edge_length = 0.4;
    EXPECT_EQ(remesh(old_mesh, c).mesh.mode(), DimensionMode::surface3d);
}
