#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <unordered_set>

#include "hdremesh/errors.hpp"
#include "hdremesh/geometry.hpp"
#include "hdremesh/random.hpp"
#include "hdremesh/remesh.hpp"
#include "hdremesh/spatial_grid.hpp"

namespace hdremesh {

namespace planar {

namespace {

constexpr double kCornerAngle = 20.0 * std::numbers::pi / 180.0;
constexpr double kInteriorClearance = 0.6; // in units of the target length
constexpr int kSmoothingPasses = 8;
constexpr int kConformityRounds = 40;

std::vector<Vec2> clean_loop(std::span<const Vec2> boundary) {
    std::vector<Vec2> loop;
    loop.reserve(boundary.size());
    double scale = 0.0;
    for (const Vec2& p : boundary) {
        if (!p.allFinite()) {
            throw GeometryError("boundary loop has a non-finite vertex");
        }
        scale = std::max(scale, p.cwiseAbs().maxCoeff());
    }
    const double eps = 1e-14 * std::max(scale, 1.0);
    for (const Vec2& p : boundary) {
        if (loop.empty() || (p - loop.back()).norm() > eps) {
            loop.push_back(p);
        }
    }
    while (loop.size() > 1 && (loop.front() - loop.back()).norm() <= eps) {
        loop.pop_back();
    }
    return loop;
}

std::vector<std::size_t> feature_corners(const std::vector<Vec2>& loop) {
    const std::size_t n = loop.size();
    std::vector<std::size_t> corners;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 in = loop[i] - loop[(i + n - 1) % n];
        const Vec2 out = loop[(i + 1) % n] - loop[i];
        const double turn = std::atan2(geometry::cross2(in, out), in.dot(out));
        if (std::abs(turn) > kCornerAngle) {
            corners.push_back(i);
        }
    }
    if (corners.empty()) {
        std::size_t lowest = 0;
        for (std::size_t i = 1; i < n; ++i) {
            if (std::tie(loop[i].x(), loop[i].y()) < std::tie(loop[lowest].x(), loop[lowest].y())) {
                lowest = i;
            }
        }
        corners.push_back(lowest);
    }
    return corners;
}

// Equal arc-length points along loop[from] .. loop[to] (cyclic), excluding the
// end corner.
void resample_chain(const std::vector<Vec2>& loop, std::size_t from, std::size_t to, double h,
                    std::vector<Vec2>& out) {
    const std::size_t n = loop.size();
    std::vector<Vec2> chain{loop[from]};
    for (std::size_t i = (from + 1) % n;; i = (i + 1) % n) {
        chain.push_back(loop[i]);
        if (i == to) {
            break;
        }
    }
    std::vector<double> arc(chain.size(), 0.0);
    for (std::size_t i = 1; i < chain.size(); ++i) {
        arc[i] = arc[i - 1] + (chain[i] - chain[i - 1]).norm();
    }
    const double length = arc.back();
    const auto segments = std::max<long>(1, std::lround(length / h));
    out.push_back(chain.front());
    std::size_t seg = 1;
    for (long j = 1; j < segments; ++j) {
        const double s = length * static_cast<double>(j) / static_cast<double>(segments);
        while (seg + 1 < arc.size() && arc[seg] < s) {
            ++seg;
        }
        const double span = arc[seg] - arc[seg - 1];
        const double t = span > 0.0 ? (s - arc[seg - 1]) / span : 0.0;
        out.push_back(chain[seg - 1] + t * (chain[seg] - chain[seg - 1]));
    }
}

std::uint64_t edge_key(std::size_t a, std::size_t b) {
    if (a > b) {
        std::swap(a, b);
    }
    return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint64_t>(b);
}

std::unordered_set<std::uint64_t> edge_set(const std::vector<Tri2>& triangles) {
    std::unordered_set<std::uint64_t> edges;
    edges.reserve(3 * triangles.size());
    for (const Tri2& t : triangles) {
        for (int i = 0; i < 3; ++i) {
            edges.insert(edge_key(t[i], t[(i + 1) % 3]));
        }
    }
    return edges;
}

Vec3 lift(const Vec2& p) { return {p.x(), p.y(), 0.0}; }

struct Adjacency {
    std::vector<std::size_t> start;
    std::vector<std::size_t> items;
};

Adjacency vertex_triangles(std::size_t vertex_count, const std::vector<Tri2>& triangles) {
    Adjacency adj;
    adj.start.assign(vertex_count + 1, 0);
    for (const Tri2& t : triangles) {
        for (std::size_t v : t) {
            ++adj.start[v + 1];
        }
    }
    for (std::size_t i = 0; i < vertex_count; ++i) {
        adj.start[i + 1] += adj.start[i];
    }
    adj.items.resize(adj.start.back());
    std::vector<std::size_t> fill(adj.start.begin(), adj.start.end() - 1);
    for (std::size_t t = 0; t < triangles.size(); ++t) {
        for (std::size_t v : triangles[t]) {
            adj.items[fill[v]++] = t;
        }
    }
    return adj;
}

void smooth(std::vector<Vec2>& points, std::vector<Tri2>& triangles,
            const std::vector<char>& on_boundary) {
    for (int pass = 0; pass < kSmoothingPasses; ++pass) {
        const Adjacency adj = vertex_triangles(points.size(), triangles);
        for (std::size_t v = 0; v < points.size(); ++v) {
            if (on_boundary[v] || adj.start[v] == adj.start[v + 1]) {
                continue;
            }
            Vec2 sum = Vec2::Zero();
            std::size_t count = 0;
            for (std::size_t s = adj.start[v]; s < adj.start[v + 1]; ++s) {
                for (std::size_t w : triangles[adj.items[s]]) {
                    if (w != v) {
                        sum += points[w];
                        ++count;
                    }
                }
            }
            // every neighbour is counted twice, which leaves the mean unchanged
            const Vec2 target = sum / static_cast<double>(count);
            const Vec2 old = points[v];
            points[v] = target;
            for (std::size_t s = adj.start[v]; s < adj.start[v + 1]; ++s) {
                const Tri2& t = triangles[adj.items[s]];
                const Vec3 a = lift(points[t[0]]), b = lift(points[t[1]]), c = lift(points[t[2]]);
                if (geometry::orient2d(points[t[0]], points[t[1]], points[t[2]]) <= 0.0 ||
                    is_degenerate(a, b, c)) {
                    points[v] = old;
                    break;
                }
            }
        }
        for (int flip_round = 0; flip_round < 16; ++flip_round) {
            if (delaunay_flip_pass(points, triangles) == 0) {
                break;
            }
        }
    }
}

} // namespace

PlanarMesh generate_planar_mesh(std::span<const Vec2> boundary, double target_edge_length,
                                std::uint64_t seed) {
    const double h = target_edge_length;
    if (!(h > 0.0) || !std::isfinite(h)) {
        throw ArgumentError("target edge length must be positive and finite");
    }
    std::vector<Vec2> loop = clean_loop(boundary);
    if (loop.size() < 3) {
        throw GeometryError("boundary loop needs at least three distinct vertices");
    }
    const double signed_area = geometry::polygon_signed_area(loop);
    Vec2 lo = loop.front(), hi = loop.front();
    for (const Vec2& p : loop) {
        lo = lo.cwiseMin(p);
        hi = hi.cwiseMax(p);
    }
    const double diameter = (hi - lo).norm();
    if (!(std::abs(signed_area) > 1e-12 * diameter * diameter)) {
        throw GeometryError("boundary loop encloses no area");
    }
    if (signed_area < 0.0) {
        std::reverse(loop.begin(), loop.end());
    }
    if (geometry::polygon_self_intersects(loop)) {
        throw GeometryError("boundary loop self-intersects");
    }

    PlanarMesh out;
    if (h > diameter) {
        out.warnings.push_back("target edge length exceeds the domain diameter; "
                               "returning a minimal triangulation");
    }

    const std::vector<std::size_t> corners = feature_corners(loop);
    std::vector<Vec2> ring;
    for (std::size_t k = 0; k < corners.size(); ++k) {
        const std::size_t to = corners[(k + 1) % corners.size()];
        resample_chain(loop, corners[k], to, h, ring);
    }
    while (ring.size() < 4) {
        std::size_t longest = 0;
        for (std::size_t i = 1; i < ring.size(); ++i) {
            if ((ring[(i + 1) % ring.size()] - ring[i]).norm() >
                (ring[(longest + 1) % ring.size()] - ring[longest]).norm()) {
                longest = i;
            }
        }
        const Vec2 mid = 0.5 * (ring[longest] + ring[(longest + 1) % ring.size()]);
        ring.insert(ring.begin() + static_cast<long>(longest) + 1, mid);
    }

    std::vector<geometry::Aabb> segment_boxes(ring.size());
    for (std::size_t i = 0; i < ring.size(); ++i) {
        segment_boxes[i].expand(lift(ring[i]));
        segment_boxes[i].expand(lift(ring[(i + 1) % ring.size()]));
    }
    const SpatialGrid segment_grid(segment_boxes, h);

    DelaunayTriangulator dt(lo, hi);
    std::vector<std::size_t> ring_ids;
    ring_ids.reserve(ring.size());
    for (const Vec2& p : ring) {
        ring_ids.push_back(dt.insert(p));
    }

    Rng rng(seed);
    const double dy = h * std::sqrt(3.0) / 2.0;
    const double ox = uniform(rng, 0.0, h);
    const double oy = uniform(rng, 0.0, dy);
    const long row0 = static_cast<long>(std::floor((lo.y() - oy) / dy));
    const long row1 = static_cast<long>(std::ceil((hi.y() - oy) / dy));
    for (long r = row0; r <= row1; ++r) {
        const double y = oy + static_cast<double>(r) * dy;
        const double shift = ox + ((r % 2 != 0) ? 0.5 * h : 0.0);
        const long col0 = static_cast<long>(std::floor((lo.x() - shift) / h));
        const long col1 = static_cast<long>(std::ceil((hi.x() - shift) / h));
        for (long c = col0; c <= col1; ++c) {
            const Vec2 p(shift + static_cast<double>(c) * h, y);
            if (!geometry::point_in_polygon(p, ring)) {
                continue;
            }
            const Vec3 q = lift(p);
            const auto hit = segment_grid.nearest(q, [&](std::size_t i) {
                return geometry::point_segment_distance_squared(q, lift(ring[i]),
                                                                lift(ring[(i + 1) % ring.size()]));
            });
            if (hit.distance_squared < kInteriorClearance * kInteriorClearance * h * h) {
                continue;
            }
            dt.insert(p);
        }
    }

    // recover boundary segments missing from the triangulation
    std::vector<Tri2> triangles = dt.triangles();
    for (int round = 0;; ++round) {
        const auto edges = edge_set(triangles);
        std::vector<std::size_t> next_ids;
        std::vector<Vec2> next_ring;
        bool missing = false;
        for (std::size_t i = 0; i < ring_ids.size(); ++i) {
            const std::size_t j = (i + 1) % ring_ids.size();
            next_ids.push_back(ring_ids[i]);
            next_ring.push_back(ring[i]);
            if (!edges.contains(edge_key(ring_ids[i], ring_ids[j]))) {
                missing = true;
                const Vec2 mid = 0.5 * (ring[i] + ring[j]);
                next_ids.push_back(dt.insert(mid));
                next_ring.push_back(mid);
            }
        }
        if (!missing) {
            break;
        }
        if (round == kConformityRounds) {
            throw GeometryError("could not recover the boundary in the triangulation");
        }
        ring_ids = std::move(next_ids);
        ring = std::move(next_ring);
        triangles = dt.triangles();
    }

    const std::vector<Vec2> all_points = dt.points();
    std::vector<Tri2> inside;
    inside.reserve(triangles.size());
    for (const Tri2& t : triangles) {
        const Vec2 c = (all_points[t[0]] + all_points[t[1]] + all_points[t[2]]) / 3.0;
        if (geometry::point_in_polygon(c, ring)) {
            inside.push_back(t);
        }
    }

    std::vector<std::size_t> remap(all_points.size(), invalid_index);
    for (Tri2& t : inside) {
        for (std::size_t& v : t) {
            if (remap[v] == invalid_index) {
                remap[v] = out.points.size();
                out.points.push_back(all_points[v]);
            }
            v = remap[v];
        }
    }
    std::vector<char> on_boundary(out.points.size(), 0);
    for (std::size_t id : ring_ids) {
        if (remap[id] != invalid_index) {
            on_boundary[remap[id]] = 1;
        }
    }
    smooth(out.points, inside, on_boundary);
    out.triangles = std::move(inside);
    return out;
}

} // namespace planar

RemeshResult remesh_planar(const SurfaceMesh& old_mesh, const RemeshConfig& config) {
    config.validate();
    if (old_mesh.mode() != DimensionMode::planar2d) {
        throw ArgumentError("planar remeshing needs a planar mesh");
    }
    const auto loops = boundary_loops(old_mesh);
    if (loops.size() != 1) {
        throw GeometryError("planar remeshing needs exactly one boundary loop, found " +
                            std::to_string(loops.size()));
    }
    std::vector<Vec2> polygon;
    polygon.reserve(loops.front().size());
    for (NodeIndex n : loops.front()) {
        const Vec3& p = old_mesh.position(n, Configuration::current);
        polygon.emplace_back(p.x(), p.y());
    }
    planar::PlanarMesh generated =
        planar::generate_planar_mesh(polygon, config.target_edge_length, config.seed);

    std::vector<Vec3> positions;
    positions.reserve(generated.points.size());
    for (const Vec2& p : generated.points) {
        positions.emplace_back(p.x(), p.y(), 0.0);
    }
    RemeshResult result;
    result.mesh = SurfaceMesh::build(positions, generated.triangles, DimensionMode::planar2d);
    result.warnings = std::move(generated.warnings);
    result.achieved_median_edge_length = median_edge_length(result.mesh, Configuration::current);
    return result;
}

} // namespace hdremesh
