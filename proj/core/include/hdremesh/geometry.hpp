#ifndef HDREMESH_GEOMETRY_HPP
#define HDREMESH_GEOMETRY_HPP

#include <span>

#include "hdremesh/types.hpp"

namespace hdremesh::geometry {

Vec3 closest_point_on_segment(const Vec3& p, const Vec3& a, const Vec3& b);
double point_segment_distance_squared(const Vec3& p, const Vec3& a, const Vec3& b);

// Closest point on the closed triangle (a, b, c) by Voronoi-region classification.
Vec3 closest_point_on_triangle(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c);
double point_triangle_distance_squared(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c);

double cross2(const Vec2& a, const Vec2& b);
double orient2d(const Vec2& a, const Vec2& b, const Vec2& c);

// Signed area, positive for counter-clockwise loops.
double polygon_signed_area(std::span<const Vec2> loop);
bool point_in_polygon(const Vec2& p, std::span<const Vec2> loop);
double point_polyline_distance(const Vec2& p, std::span<const Vec2> loop);

// Proper or touching intersection of the closed segments [a, b] and [c, d].
bool segments_intersect(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d);

// True when some pair of non-adjacent edges of the closed loop intersects.
bool polygon_self_intersects(std::span<const Vec2> loop);

struct Aabb {
    Vec3 lo = Vec3::Constant(std::numeric_limits<double>::infinity());
    Vec3 hi = Vec3::Constant(-std::numeric_limits<double>::infinity());

    void expand(const Vec3& p) {
        lo = lo.cwiseMin(p);
        hi = hi.cwiseMax(p);
    }
    void expand(const Aabb& other) {
        lo = lo.cwiseMin(other.lo);
        hi = hi.cwiseMax(other.hi);
    }
    bool empty() const { return (hi.array() < lo.array()).any(); }
};

} // namespace hdremesh::geometry

#endif
