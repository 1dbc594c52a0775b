#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "hdremesh/spatial_grid.hpp"

using namespace hdremesh;

TEST(SpatialGrid, NearestMatchesExhaustiveScan) {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(0.0, 5.0);
    std::vector<Vec3> pts;
    std::vector<geometry::Aabb> boxes;
    for (int i = 0; i < 400; ++i) {
        pts.emplace_back(u(rng), u(rng), 0.5 * u(rng));
        geometry::Aabb box;
        box.expand(pts.back());
        boxes.push_back(box);
    }
    const SpatialGrid grid(boxes, 0.3);
    for (int q = 0; q < 2000; ++q) {
        const Vec3 p(u(rng) * 1.4 - 1.0, u(rng) * 1.4 - 1.0, u(rng) - 1.0);
        const auto d2 = [&](std::size_t i) { return (pts[i] - p).squaredNorm(); };
        std::size_t best = 0;
        for (std::size_t i = 1; i < pts.size(); ++i) {
            if (d2(i) < d2(best)) {
                best = i;
            }
        }
        const auto hit = grid.nearest(p, d2);
        EXPECT_EQ(hit.item, best);
        EXPECT_EQ(hit.distance_squared, d2(best));
    }
}

TEST(SpatialGrid, TiesResolveToLowestId) {
    std::vector<geometry::Aabb> boxes(2);
    boxes[0].expand(Vec3(1, 0, 0));
    boxes[1].expand(Vec3(-1, 0, 0));
    const std::vector<Vec3> pts{{1, 0, 0}, {-1, 0, 0}};
    const SpatialGrid grid(boxes, 0.25);
    const auto hit =
        grid.nearest(Vec3(0, 0, 0), [&](std::size_t i) { return pts[i].squaredNorm(); });
    EXPECT_EQ(hit.item, 0u);
}

TEST(SpatialGrid, EmptyGridReturnsNoItem) {
    const SpatialGrid grid;
    const auto hit = grid.nearest(Vec3(0, 0, 0), [](std::size_t) { return 0.0; });
    EXPECT_EQ(hit.item, invalid_index);
}
