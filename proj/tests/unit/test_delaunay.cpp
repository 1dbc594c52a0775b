#include <random>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "hdremesh/delaunay.hpp"
#include "hdremesh/geometry.hpp"

using namespace hdremesh;
using namespace hdremesh::planar;

namespace {

// Standard incircle determinant; positive when d is inside the circle through
// the counter-clockwise triangle (a, b, c).
double incircle(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
    const double adx = a.x() - d.x(), ady = a.y() - d.y();
    const double bdx = b.x() - d.x(), bdy = b.y() - d.y();
    const double cdx = c.x() - d.x(), cdy = c.y() - d.y();
    return (adx * adx + ady * ady) * (bdx * cdy - cdx * bdy) -
           (bdx * bdx + bdy * bdy) * (adx * cdy - cdx * ady) +
           (cdx * cdx + cdy * cdy) * (adx * bdy - bdx * ady);
}

} // namespace

TEST(Delaunay, RandomPointsSatisfyEmptyCircumcircle) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    DelaunayTriangulator dt(Vec2(0, 0), Vec2(1, 1));
    for (int i = 0; i < 300; ++i) {
        dt.insert(Vec2(u(rng), u(rng)));
    }
    const auto pts = dt.points();
    const auto tris = dt.triangles();
    ASSERT_EQ(pts.size(), 300u);
    double area = 0.0;
    std::set<std::size_t> used;
    for (const auto& t : tris) {
        ASSERT_GT(geometry::orient2d(pts[t[0]], pts[t[1]], pts[t[2]]), 0.0);
        area += 0.5 * geometry::orient2d(pts[t[0]], pts[t[1]], pts[t[2]]);
        used.insert(t.begin(), t.end());
        for (std::size_t p = 0; p < pts.size(); p += 3) {
            if (p == t[0] || p == t[1] || p == t[2]) {
                continue;
            }
            EXPECT_LE(incircle(pts[t[0]], pts[t[1]], pts[t[2]], pts[p]), 1e-12);
        }
    }
    EXPECT_EQ(used.size(), pts.size());
    EXPECT_GT(area, 0.9);
}

TEST(Delaunay, DuplicatePointsMerge) {
    DelaunayTriangulator dt(Vec2(0, 0), Vec2(1, 1));
    const std::size_t a = dt.insert(Vec2(0.5, 0.5));
    dt.insert(Vec2(0, 0));
    dt.insert(Vec2(1, 0));
    EXPECT_EQ(dt.insert(Vec2(0.5, 0.5)), a);
    EXPECT_EQ(dt.points().size(), 3u);
}

TEST(Delaunay, GridWithCollinearPoints) {
    DelaunayTriangulator dt(Vec2(0, 0), Vec2(4, 4));
    for (int j = 0; j <= 4; ++j) {
        for (int i = 0; i <= 4; ++i) {
            dt.insert(Vec2(i, j));
        }
    }
    double area = 0.0;
    const auto pts = dt.points();
    for (const auto& t : dt.triangles()) {
        area += 0.5 * geometry::orient2d(pts[t[0]], pts[t[1]], pts[t[2]]);
    }
    EXPECT_NEAR(area, 16.0, 1e-12);
    EXPECT_EQ(dt.triangles().size(), 32u);
}

TEST(Delaunay, FlipPassRepairsBadDiagonal) {
    const std::vector<Vec2> pts{{0, 0}, {2, 0}, {1.8, 1}, {0, 1}};
    // point 2 lies inside the circumcircle of 0-1-3
    std::vector<Tri2> tris{{0, 1, 3}, {1, 2, 3}};
    EXPECT_EQ(delaunay_flip_pass(pts, tris), 1u);
    EXPECT_EQ(delaunay_flip_pass(pts, tris), 0u);
    for (const auto& t : tris) {
        EXPECT_GT(geometry::orient2d(pts[t[0]], pts[t[1]], pts[t[2]]), 0.0);
    }
}
