#ifndef HDREMESH_TESTS_ORACLES_HPP
#define HDREMESH_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "hdremesh/mesh.hpp"

// Reference implementations written independently of the library code paths.
namespace oracle {

using hdremesh::Vec3;

inline double sort_median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Quantile by linear interpolation at rank (n - 1) p.
inline double sort_quantile(std::vector<double> v, double p) {
    std::sort(v.begin(), v.end());
    const double rank = p * static_cast<double>(v.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(rank));
    const auto hi = static_cast<std::size_t>(std::ceil(rank));
    return v[lo] + (rank - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

inline double segment_distance_squared(const Vec3& p, const Vec3& a, const Vec3& b) {
    const Vec3 ab = b - a;
    const double len2 = ab.squaredNorm();
    double t = len2 > 0.0 ? (p - a).dot(ab) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return (a + t * ab - p).squaredNorm();
}

// Plane projection when it falls inside (same-side tests), otherwise the
// closest of the three edges.
inline double triangle_distance_squared(const Vec3& p, const Vec3& a, const Vec3& b,
                                        const Vec3& c) {
    const Vec3 n = (b - a).cross(c - a);
    const double n2 = n.squaredNorm();
    if (n2 > 0.0) {
        const Vec3 q = p - n * (n.dot(p - a) / n2);
        const bool inside = n.dot((b - a).cross(q - a)) >= 0.0 &&
                            n.dot((c - b).cross(q - b)) >= 0.0 &&
                            n.dot((a - c).cross(q - c)) >= 0.0;
        if (inside) {
            return (p - q).squaredNorm();
        }
    }
    return std::min({segment_distance_squared(p, a, b), segment_distance_squared(p, b, c),
                     segment_distance_squared(p, c, a)});
}

inline double element_distance_squared(const hdremesh::SurfaceMesh& mesh, std::size_t e,
                                       const Vec3& p) {
    const auto& t = mesh.triangle(e);
    const auto cfg = hdremesh::Configuration::current;
    return triangle_distance_squared(p, mesh.position(t[0], cfg), mesh.position(t[1], cfg),
                                     mesh.position(t[2], cfg));
}

struct Argmin {
    std::size_t element = 0;
    double distance_squared = std::numeric_limits<double>::infinity();
};

inline Argmin nearest_triangle(const hdremesh::SurfaceMesh& mesh, const Vec3& p) {
    Argmin best;
    for (std::size_t e = 0; e < mesh.element_count(); ++e) {
        const double d2 = element_distance_squared(mesh, e, p);
        if (d2 < best.distance_squared) {
            best = {e, d2};
        }
    }
    return best;
}

// AR from side lengths via Heron: 2 r_in / r_circ = 8 A^2 / (s a b c).
inline double aspect_ratio_from_sides(double a, double b, double c) {
    const double s = 0.5 * (a + b + c);
    const double area2 = s * (s - a) * (s - b) * (s - c);
    if (area2 <= 0.0) {
        return 0.0;
    }
    return 8.0 * area2 / (s * a * b * c);
}

// Structured right-triangle grid over [0, w] x [0, h] with nx x ny cells.
inline hdremesh::SurfaceMesh grid_mesh(double w, double h, std::size_t nx, std::size_t ny) {
    std::vector<Vec3> pts;
    std::vector<hdremesh::Triangle> tris;
    for (std::size_t j = 0; j <= ny; ++j) {
        for (std::size_t i = 0; i <= nx; ++i) {
            pts.emplace_back(w * static_cast<double>(i) / static_cast<double>(nx),
                             h * static_cast<double>(j) / static_cast<double>(ny), 0.0);
        }
    }
    const auto id = [nx](std::size_t i, std::size_t j) { return j * (nx + 1) + i; };
    for (std::size_t j = 0; j < ny; ++j) {
        for (std::size_t i = 0; i < nx; ++i) {
            tris.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
            tris.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
        }
    }
    return hdremesh::SurfaceMesh::build(pts, tris, hdremesh::DimensionMode::planar2d);
}

} // namespace oracle

#endif
