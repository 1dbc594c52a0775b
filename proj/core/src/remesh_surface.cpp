#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>
#include <unordered_set>

#include "hdremesh/errors.hpp"
#include "hdremesh/geometry.hpp"
#include "hdremesh/remesh.hpp"
#include "hdremesh/spatial_grid.hpp"

namespace hdremesh {

namespace {

constexpr double kSplitFactor = 4.0 / 3.0;
constexpr double kCollapseFactor = 4.0 / 5.0;
constexpr double kSmoothingWeight = 0.5;
constexpr double kMinNormalCosine = 0.2;
constexpr int kMaxPasses = 64;

// Nearest points on the old surface and on its boundary loops.
class Projector {
public:
    explicit Projector(const SurfaceMesh& mesh) {
        const double cell = median_edge_length(mesh, Configuration::current);
        std::vector<geometry::Aabb> boxes;
        boxes.reserve(mesh.element_count());
        corners_.reserve(mesh.element_count());
        for (ElementIndex e = 0; e < mesh.element_count(); ++e) {
            corners_.push_back(mesh.corners(e, Configuration::current));
            geometry::Aabb box;
            for (const Vec3& p : corners_.back()) {
                box.expand(p);
            }
            boxes.push_back(box);
        }
        triangle_grid_ = SpatialGrid(boxes, cell);

        std::vector<geometry::Aabb> segment_boxes;
        for (const auto& loop : boundary_loops(mesh)) {
            for (std::size_t i = 0; i < loop.size(); ++i) {
                const Vec3& a = mesh.position(loop[i], Configuration::current);
                const Vec3& b = mesh.position(loop[(i + 1) % loop.size()], Configuration::current);
                segments_.push_back({a, b});
                geometry::Aabb box;
                box.expand(a);
                box.expand(b);
                segment_boxes.push_back(box);
            }
        }
        if (!segments_.empty()) {
            segment_grid_ = SpatialGrid(segment_boxes, cell);
        }
    }

    Vec3 onto_surface(const Vec3& p) const {
        const auto hit = triangle_grid_.nearest(p, [&](std::size_t e) {
            const auto& c = corners_[e];
            return geometry::point_triangle_distance_squared(p, c[0], c[1], c[2]);
        });
        const auto& c = corners_[hit.item];
        return geometry::closest_point_on_triangle(p, c[0], c[1], c[2]);
    }

    Vec3 onto_boundary(const Vec3& p) const {
        if (segments_.empty()) {
            return onto_surface(p);
        }
        const auto hit = segment_grid_.nearest(p, [&](std::size_t i) {
            return geometry::point_segment_distance_squared(p, segments_[i][0], segments_[i][1]);
        });
        return geometry::closest_point_on_segment(p, segments_[hit.item][0], segments_[hit.item][1]);
    }

private:
    std::vector<std::array<Vec3, 3>> corners_;
    SpatialGrid triangle_grid_;
    std::vector<std::array<Vec3, 2>> segments_;
    SpatialGrid segment_grid_;
};

struct Edge {
    std::size_t a, b;            // a < b
    std::size_t t0, t1;          // t1 == invalid_index on the boundary
    bool boundary() const { return t1 == invalid_index; }
};

struct Adjacency {
    std::vector<std::size_t> start;
    std::vector<std::size_t> items;

    std::span<const std::size_t> of(std::size_t v) const {
        return {items.data() + start[v], start[v + 1] - start[v]};
    }
};

Vec3 raw_normal(const Vec3& a, const Vec3& b, const Vec3& c) { return (b - a).cross(c - a); }

class Work {
public:
    Work(std::vector<Vec3> positions, std::vector<Triangle> triangles)
        : pos(std::move(positions)), tris(std::move(triangles)) {}

    std::vector<Vec3> pos;
    std::vector<Triangle> tris;

    std::vector<Edge> edges() const {
        struct Half {
            std::size_t a, b, t;
        };
        std::vector<Half> half;
        half.reserve(3 * tris.size());
        for (std::size_t t = 0; t < tris.size(); ++t) {
            for (int i = 0; i < 3; ++i) {
                const std::size_t u = tris[t][i], v = tris[t][(i + 1) % 3];
                half.push_back({std::min(u, v), std::max(u, v), t});
            }
        }
        std::sort(half.begin(), half.end(), [](const Half& x, const Half& y) {
            return std::tie(x.a, x.b, x.t) < std::tie(y.a, y.b, y.t);
        });
        std::vector<Edge> out;
        out.reserve(half.size() / 2 + 1);
        for (std::size_t i = 0; i < half.size();) {
            if (i + 1 < half.size() && half[i].a == half[i + 1].a && half[i].b == half[i + 1].b) {
                out.push_back({half[i].a, half[i].b, half[i].t, half[i + 1].t});
                i += 2;
            } else {
                out.push_back({half[i].a, half[i].b, half[i].t, invalid_index});
                i += 1;
            }
        }
        return out;
    }

    Adjacency vertex_triangles() const {
        Adjacency adj;
        adj.start.assign(pos.size() + 1, 0);
        for (const auto& t : tris) {
            for (std::size_t v : t) {
                ++adj.start[v + 1];
            }
        }
        for (std::size_t i = 0; i < pos.size(); ++i) {
            adj.start[i + 1] += adj.start[i];
        }
        adj.items.resize(adj.start.back());
        std::vector<std::size_t> fill(adj.start.begin(), adj.start.end() - 1);
        for (std::size_t t = 0; t < tris.size(); ++t) {
            for (std::size_t v : tris[t]) {
                adj.items[fill[v]++] = t;
            }
        }
        return adj;
    }

    std::vector<char> boundary_flags(const std::vector<Edge>& edge_list) const {
        std::vector<char> flags(pos.size(), 0);
        for (const Edge& e : edge_list) {
            if (e.boundary()) {
                flags[e.a] = flags[e.b] = 1;
            }
        }
        return flags;
    }

    double length(const Edge& e) const { return (pos[e.a] - pos[e.b]).norm(); }

    // Drops triangles marked dead and vertices no triangle references.
    void compact(const std::vector<char>& dead) {
        std::vector<Triangle> kept;
        kept.reserve(tris.size());
        for (std::size_t t = 0; t < tris.size(); ++t) {
            if (!dead[t]) {
                kept.push_back(tris[t]);
            }
        }
        std::vector<std::size_t> remap(pos.size(), invalid_index);
        std::vector<Vec3> kept_pos;
        kept_pos.reserve(pos.size());
        for (auto& t : kept) {
            for (std::size_t& v : t) {
                if (remap[v] == invalid_index) {
                    remap[v] = kept_pos.size();
                    kept_pos.push_back(pos[v]);
                }
                v = remap[v];
            }
        }
        tris = std::move(kept);
        pos = std::move(kept_pos);
    }
};

int local_index(const Triangle& t, std::size_t v) {
    for (int i = 0; i < 3; ++i) {
        if (t[i] == v) {
            return i;
        }
    }
    return -1;
}

bool contains(const Triangle& t, std::size_t v) { return local_index(t, v) >= 0; }

std::size_t opposite(const Triangle& t, std::size_t a, std::size_t b) {
    for (std::size_t v : t) {
        if (v != a && v != b) {
            return v;
        }
    }
    return invalid_index;
}

std::size_t split_pass(Work& w, double high) {
    std::vector<Edge> edge_list = w.edges();
    std::vector<double> len(edge_list.size());
    for (std::size_t i = 0; i < edge_list.size(); ++i) {
        len[i] = w.length(edge_list[i]);
    }
    std::vector<std::size_t> order(edge_list.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return len[x] > len[y]; });

    std::vector<char> locked(w.tris.size(), 0);
    std::size_t splits = 0;
    for (std::size_t idx : order) {
        if (len[idx] <= high) {
            break;
        }
        const Edge& e = edge_list[idx];
        if (locked[e.t0] || (!e.boundary() && locked[e.t1])) {
            continue;
        }
        const std::size_t m = w.pos.size();
        w.pos.push_back(0.5 * (w.pos[e.a] + w.pos[e.b]));
        for (std::size_t t : {e.t0, e.t1}) {
            if (t == invalid_index) {
                continue;
            }
            const Triangle tri = w.tris[t];
            int i = 0;
            while (!((tri[i] == e.a && tri[(i + 1) % 3] == e.b) ||
                     (tri[i] == e.b && tri[(i + 1) % 3] == e.a))) {
                ++i;
            }
            const std::size_t u = tri[i], v = tri[(i + 1) % 3], o = tri[(i + 2) % 3];
            w.tris[t] = {u, m, o};
            w.tris.push_back({m, v, o});
            locked[t] = 1;
            locked.push_back(1);
        }
        ++splits;
    }
    return splits;
}

std::size_t collapse_pass(Work& w, double low, double high) {
    const std::vector<Edge> edge_list = w.edges();
    const std::vector<char> on_boundary = w.boundary_flags(edge_list);
    const Adjacency adj = w.vertex_triangles();
    std::vector<double> len(edge_list.size());
    for (std::size_t i = 0; i < edge_list.size(); ++i) {
        len[i] = w.length(edge_list[i]);
    }
    std::vector<std::size_t> order(edge_list.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return len[x] < len[y]; });

    std::vector<char> vlocked(w.pos.size(), 0);
    std::vector<char> dead(w.tris.size(), 0);
    std::vector<std::size_t> ring_a, ring_b;
    auto one_ring = [&](std::size_t v, std::vector<std::size_t>& out) {
        out.clear();
        for (std::size_t t : adj.of(v)) {
            for (std::size_t u : w.tris[t]) {
                if (u != v) {
                    out.push_back(u);
                }
            }
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
    };

    std::size_t collapses = 0;
    for (std::size_t idx : order) {
        if (len[idx] >= low) {
            break;
        }
        const Edge& e = edge_list[idx];
        if (vlocked[e.a] || vlocked[e.b]) {
            continue;
        }
        const bool ba = on_boundary[e.a], bb = on_boundary[e.b];
        if (ba && bb && !e.boundary()) {
            continue;
        }
        std::size_t keep = e.a, drop = e.b;
        Vec3 target = 0.5 * (w.pos[e.a] + w.pos[e.b]);
        if (ba && !bb) {
            target = w.pos[e.a];
        } else if (bb && !ba) {
            keep = e.b;
            drop = e.a;
            target = w.pos[e.b];
        }

        one_ring(e.a, ring_a);
        one_ring(e.b, ring_b);
        std::vector<std::size_t> common;
        std::set_intersection(ring_a.begin(), ring_a.end(), ring_b.begin(), ring_b.end(),
                              std::back_inserter(common));
        std::vector<std::size_t> opposite_vertices{opposite(w.tris[e.t0], e.a, e.b)};
        if (!e.boundary()) {
            opposite_vertices.push_back(opposite(w.tris[e.t1], e.a, e.b));
        }
        std::sort(opposite_vertices.begin(), opposite_vertices.end());
        if (common != opposite_vertices) {
            continue;
        }
        // a closed surface must not shrink below a tetrahedron
        if (ring_a.size() + ring_b.size() < 7 && !e.boundary()) {
            continue;
        }

        bool ok = true;
        for (const auto* ring : {&ring_a, &ring_b}) {
            for (std::size_t u : *ring) {
                if (u != e.a && u != e.b && (w.pos[u] - target).norm() > high) {
                    ok = false;
                }
            }
        }
        for (std::size_t v : {e.a, e.b}) {
            for (std::size_t t : adj.of(v)) {
                if (!ok) {
                    break;
                }
                const Triangle& tri = w.tris[t];
                if (contains(tri, e.a) && contains(tri, e.b)) {
                    continue;
                }
                std::array<Vec3, 3> p{w.pos[tri[0]], w.pos[tri[1]], w.pos[tri[2]]};
                const Vec3 before = raw_normal(p[0], p[1], p[2]);
                p[local_index(tri, v)] = target;
                const Vec3 after = raw_normal(p[0], p[1], p[2]);
                if (is_degenerate(p[0], p[1], p[2]) ||
                    before.normalized().dot(after.normalized()) < kMinNormalCosine) {
                    ok = false;
                }
            }
        }
        if (!ok) {
            continue;
        }

        w.pos[keep] = target;
        for (std::size_t t : adj.of(drop)) {
            Triangle& tri = w.tris[t];
            if (contains(tri, keep)) {
                dead[t] = 1;
            } else {
                tri[local_index(tri, drop)] = keep;
            }
        }
        vlocked[e.a] = vlocked[e.b] = 1;
        for (const auto* ring : {&ring_a, &ring_b}) {
            for (std::size_t u : *ring) {
                vlocked[u] = 1;
            }
        }
        ++collapses;
    }
    if (collapses > 0) {
        w.compact(dead);
    }
    return collapses;
}

std::uint64_t edge_key(std::size_t a, std::size_t b) {
    if (a > b) {
        std::swap(a, b);
    }
    return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint64_t>(b);
}

std::size_t flip_pass(Work& w) {
    const std::vector<Edge> edge_list = w.edges();
    const std::vector<char> on_boundary = w.boundary_flags(edge_list);
    std::vector<int> valence(w.pos.size(), 0);
    std::unordered_set<std::uint64_t> existing;
    existing.reserve(2 * edge_list.size());
    for (const Edge& e : edge_list) {
        ++valence[e.a];
        ++valence[e.b];
        existing.insert(edge_key(e.a, e.b));
    }
    auto deviation = [&](std::size_t v, int val) {
        return std::abs(val - (on_boundary[v] ? 4 : 6));
    };

    std::vector<char> locked(w.tris.size(), 0);
    std::size_t flips = 0;
    for (const Edge& e : edge_list) {
        if (e.boundary() || locked[e.t0] || locked[e.t1]) {
            continue;
        }
        // orient so that t0 = (a, b, c) and t1 = (b, a, d)
        Triangle& t0 = w.tris[e.t0];
        Triangle& t1 = w.tris[e.t1];
        const int i0 = local_index(t0, e.a);
        std::size_t a = e.a, b = e.b;
        if (t0[(i0 + 1) % 3] != e.b) {
            std::swap(a, b);
        }
        const std::size_t c = opposite(t0, a, b);
        const std::size_t d = opposite(t1, a, b);
        if (c == d || existing.contains(edge_key(c, d))) {
            continue;
        }
        const int before = deviation(a, valence[a]) + deviation(b, valence[b]) +
                           deviation(c, valence[c]) + deviation(d, valence[d]);
        const int after = deviation(a, valence[a] - 1) + deviation(b, valence[b] - 1) +
                          deviation(c, valence[c] + 1) + deviation(d, valence[d] + 1);
        if (after >= before || valence[a] <= 3 || valence[b] <= 3) {
            continue;
        }
        const Vec3 n0 = raw_normal(w.pos[a], w.pos[b], w.pos[c]);
        const Vec3 n1 = raw_normal(w.pos[b], w.pos[a], w.pos[d]);
        const Vec3 m0 = raw_normal(w.pos[a], w.pos[d], w.pos[c]);
        const Vec3 m1 = raw_normal(w.pos[d], w.pos[b], w.pos[c]);
        if (is_degenerate(w.pos[a], w.pos[d], w.pos[c]) ||
            is_degenerate(w.pos[d], w.pos[b], w.pos[c])) {
            continue;
        }
        const Vec3 mean = n0.normalized() + n1.normalized();
        if (m0.normalized().dot(m1.normalized()) < kMinNormalCosine ||
            m0.dot(mean) <= 0.0 || m1.dot(mean) <= 0.0) {
            continue;
        }
        const double worst_before =
            std::min(aspect_ratio(w.pos[a], w.pos[b], w.pos[c]),
                     aspect_ratio(w.pos[b], w.pos[a], w.pos[d]));
        const double worst_after =
            std::min(aspect_ratio(w.pos[a], w.pos[d], w.pos[c]),
                     aspect_ratio(w.pos[d], w.pos[b], w.pos[c]));
        if (worst_after < 0.5 * worst_before) {
            continue;
        }
        t0 = {a, d, c};
        t1 = {d, b, c};
        --valence[a];
        --valence[b];
        ++valence[c];
        ++valence[d];
        existing.erase(edge_key(a, b));
        existing.insert(edge_key(c, d));
        locked[e.t0] = locked[e.t1] = 1;
        ++flips;
    }
    return flips;
}

void smooth_and_project(Work& w, const Projector& projector, bool smooth) {
    const std::vector<Edge> edge_list = w.edges();
    const std::vector<char> on_boundary = w.boundary_flags(edge_list);

    std::vector<Vec3> normals(w.pos.size(), Vec3::Zero());
    for (const auto& t : w.tris) {
        const Vec3 n = raw_normal(w.pos[t[0]], w.pos[t[1]], w.pos[t[2]]);
        for (std::size_t v : t) {
            normals[v] += n;
        }
    }
    std::vector<Vec3> boundary_sum(w.pos.size(), Vec3::Zero());
    std::vector<int> boundary_count(w.pos.size(), 0);
    std::vector<Vec3> sum(w.pos.size(), Vec3::Zero());
    std::vector<int> count(w.pos.size(), 0);
    for (const Edge& e : edge_list) {
        sum[e.a] += w.pos[e.b];
        sum[e.b] += w.pos[e.a];
        ++count[e.a];
        ++count[e.b];
        if (e.boundary()) {
            boundary_sum[e.a] += w.pos[e.b];
            boundary_sum[e.b] += w.pos[e.a];
            ++boundary_count[e.a];
            ++boundary_count[e.b];
        }
    }

    std::vector<Vec3> moved(w.pos);
    for (std::size_t v = 0; v < w.pos.size(); ++v) {
        if (on_boundary[v]) {
            if (smooth && boundary_count[v] == 2) {
                const Vec3 q = boundary_sum[v] / 2.0;
                moved[v] = projector.onto_boundary(w.pos[v] + kSmoothingWeight * (q - w.pos[v]));
            } else {
                moved[v] = projector.onto_boundary(w.pos[v]);
            }
            continue;
        }
        if (count[v] == 0) {
            continue;
        }
        if (!smooth) {
            moved[v] = projector.onto_surface(w.pos[v]);
            continue;
        }
        const Vec3 q = sum[v] / static_cast<double>(count[v]);
        Vec3 d = q - w.pos[v];
        const double nn = normals[v].norm();
        if (nn > 0.0) {
            const Vec3 n = normals[v] / nn;
            d -= n * n.dot(d);
        }
        moved[v] = projector.onto_surface(w.pos[v] + kSmoothingWeight * d);
    }

    // undo moves that fold a triangle over
    std::vector<char> reverted(w.pos.size(), 0);
    for (int round = 0; round < 8; ++round) {
        bool changed = false;
        for (const auto& t : w.tris) {
            const Vec3 before = raw_normal(w.pos[t[0]], w.pos[t[1]], w.pos[t[2]]);
            const Vec3 after = raw_normal(moved[t[0]], moved[t[1]], moved[t[2]]);
            if (!is_degenerate(moved[t[0]], moved[t[1]], moved[t[2]]) && before.dot(after) > 0.0) {
                continue;
            }
            for (std::size_t v : t) {
                if (!reverted[v]) {
                    moved[v] = w.pos[v];
                    reverted[v] = 1;
                    changed = true;
                }
            }
        }
        if (!changed) {
            break;
        }
    }
    w.pos = std::move(moved);
}

} // namespace

RemeshResult remesh_surface(const SurfaceMesh& old_mesh, const RemeshConfig& config) {
    config.validate();
    if (old_mesh.element_count() == 0) {
        throw GeometryError("cannot remesh an empty surface");
    }
    const double L = config.target_edge_length;
    const double high = kSplitFactor * L;
    const double low = kCollapseFactor * L;
    const Projector projector(old_mesh);
    Work w(old_mesh.positions(Configuration::current), old_mesh.triangles());

    RemeshResult result;
    for (std::size_t iter = 0; iter < config.iterations; ++iter) {
        for (int pass = 0; pass < kMaxPasses && split_pass(w, high) > 0; ++pass) {
        }
        for (int pass = 0; pass < kMaxPasses && collapse_pass(w, low, high) > 0; ++pass) {
        }
        for (int pass = 0; pass < 4 && flip_pass(w) > 0; ++pass) {
        }
        smooth_and_project(w, projector, true);
    }
    smooth_and_project(w, projector, false);
    if (config.iterations == 0) {
        result.warnings.push_back("zero remeshing iterations; returning the input surface");
    }

    result.mesh = SurfaceMesh::build(w.pos, w.tris, old_mesh.mode());
    result.achieved_median_edge_length = median_edge_length(result.mesh, Configuration::current);
    return result;
}

} // namespace hdremesh
