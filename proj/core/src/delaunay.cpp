#include "hdremesh/delaunay.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "hdremesh/errors.hpp"
#include "hdremesh/geometry.hpp"

namespace hdremesh::planar {

namespace {

constexpr double kOnEdgeTolerance = 1e-13;
constexpr double kInCircleTolerance = 1e-12;

// > 0 when d lies strictly inside the circumcircle of the ccw triangle (a, b, c).
bool in_circle(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
    const double adx = a.x() - d.x(), ady = a.y() - d.y();
    const double bdx = b.x() - d.x(), bdy = b.y() - d.y();
    const double cdx = c.x() - d.x(), cdy = c.y() - d.y();
    const double alift = adx * adx + ady * ady;
    const double blift = bdx * bdx + bdy * bdy;
    const double clift = cdx * cdx + cdy * cdy;
    const double t1 = bdx * cdy - bdy * cdx;
    const double t2 = cdx * ady - cdy * adx;
    const double t3 = adx * bdy - ady * bdx;
    const double det = alift * t1 + blift * t2 + clift * t3;
    const double perm = alift * std::abs(t1) + blift * std::abs(t2) + clift * std::abs(t3);
    return det > kInCircleTolerance * perm;
}

} // namespace

DelaunayTriangulator::DelaunayTriangulator(const Vec2& lo, const Vec2& hi) {
    const Vec2 center = 0.5 * (lo + hi);
    const double span = std::max({(hi - lo).maxCoeff(), 1e-12});
    const double r = 20.0 * span;
    pts_.emplace_back(center.x() - 2.0 * r, center.y() - r);
    pts_.emplace_back(center.x() + 2.0 * r, center.y() - r);
    pts_.emplace_back(center.x(), center.y() + 2.0 * r);
    faces_.push_back({{0, 1, 2}, {-1, -1, -1}});
    merge_tolerance_ = 1e-12 * span;
}

int DelaunayTriangulator::new_face(std::array<int, 3> v, std::array<int, 3> n) {
    faces_.push_back({v, n});
    return static_cast<int>(faces_.size()) - 1;
}

void DelaunayTriangulator::replace_neighbor(int face, int old_face, int new_face) {
    if (face < 0) {
        return;
    }
    for (int& n : faces_[face].n) {
        if (n == old_face) {
            n = new_face;
            return;
        }
    }
}

int DelaunayTriangulator::locate(const Vec2& p) const {
    int t = std::clamp(last_, 0, static_cast<int>(faces_.size()) - 1);
    const std::size_t cap = 4 * faces_.size() + 16;
    for (std::size_t step = 0; step < cap; ++step) {
        const Face& f = faces_[t];
        int next = -1;
        for (int k = 0; k < 3; ++k) {
            // rotate the starting edge to avoid cycling on near-degenerate input
            const int i = static_cast<int>((k + step) % 3);
            const Vec2& a = pts_[f.v[i]];
            const Vec2& b = pts_[f.v[(i + 1) % 3]];
            if (geometry::orient2d(a, b, p) < 0.0 && f.n[i] >= 0) {
                next = f.n[i];
                break;
            }
        }
        if (next < 0) {
            last_ = t;
            return t;
        }
        t = next;
    }
    // walk failed; fall back to a scan
    int best = 0;
    double best_min = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < static_cast<int>(faces_.size()); ++i) {
        const Face& f = faces_[i];
        double m = std::numeric_limits<double>::infinity();
        for (int k = 0; k < 3; ++k) {
            m = std::min(m, geometry::orient2d(pts_[f.v[k]], pts_[f.v[(k + 1) % 3]], p));
        }
        if (m > best_min) {
            best_min = m;
            best = i;
        }
    }
    last_ = best;
    return best;
}

std::size_t DelaunayTriangulator::insert(const Vec2& p) {
    if (!p.allFinite()) {
        throw ArgumentError("cannot triangulate a non-finite point");
    }
    const int t = locate(p);
    const Face f = faces_[t];
    for (int k = 0; k < 3; ++k) {
        if ((pts_[f.v[k]] - p).norm() <= merge_tolerance_) {
            return static_cast<std::size_t>(f.v[k] - 3);
        }
    }

    const int pi = static_cast<int>(pts_.size());
    pts_.push_back(p);

    int on_edge = -1;
    for (int i = 0; i < 3; ++i) {
        const Vec2& a = pts_[f.v[i]];
        const Vec2& b = pts_[f.v[(i + 1) % 3]];
        const double len = (b - a).norm();
        const double o = geometry::orient2d(a, b, p);
        if (std::abs(o) <= kOnEdgeTolerance * len * std::max(len, (p - a).norm()) &&
            f.n[i] >= 0) {
            on_edge = i;
            break;
        }
    }

    std::vector<int> created;
    if (on_edge < 0) {
        // (a, b, c) -> (p, a, b), (p, b, c), (p, c, a); outer edge is edge 1
        const int a = f.v[0], b = f.v[1], c = f.v[2];
        const int t0 = t;
        const int t1 = new_face({pi, b, c}, {-1, f.n[1], -1});
        const int t2 = new_face({pi, c, a}, {-1, f.n[2], -1});
        faces_[t0] = {{pi, a, b}, {t2, f.n[0], t1}};
        faces_[t1].n = {t0, f.n[1], t2};
        faces_[t2].n = {t1, f.n[2], t0};
        replace_neighbor(f.n[1], t, t1);
        replace_neighbor(f.n[2], t, t2);
        created = {t0, t1, t2};
    } else {
        const int i = on_edge;
        const int a = f.v[i], b = f.v[(i + 1) % 3], c = f.v[(i + 2) % 3];
        const int na_c = f.n[(i + 2) % 3]; // across (c, a)
        const int nb_c = f.n[(i + 1) % 3]; // across (b, c)
        const int u = f.n[i];
        const Face g = faces_[u];
        int j = 0;
        while (!(g.v[j] == b && g.v[(j + 1) % 3] == a)) {
            ++j;
        }
        const int d = g.v[(j + 2) % 3];
        const int na_d = g.n[(j + 1) % 3]; // across (a, d)
        const int nd_b = g.n[(j + 2) % 3]; // across (d, b)

        const int t1 = t; // (p, b, c)
        const int t2 = u; // (p, c, a)
        const int t3 = new_face({pi, a, d}, {-1, na_d, -1});
        const int t4 = new_face({pi, d, b}, {-1, nd_b, -1});
        faces_[t1] = {{pi, b, c}, {t4, nb_c, t2}};
        faces_[t2] = {{pi, c, a}, {t1, na_c, t3}};
        faces_[t3].n = {t2, na_d, t4};
        faces_[t4].n = {t3, nd_b, t1};
        replace_neighbor(nb_c, t, t1);
        replace_neighbor(na_c, t, t2);
        replace_neighbor(na_d, u, t3);
        replace_neighbor(nd_b, u, t4);
        created = {t1, t2, t3, t4};
    }

    for (int c : created) {
        legalize(c);
    }
    last_ = created.front();
    return static_cast<std::size_t>(pi - 3);
}

void DelaunayTriangulator::legalize(int start) {
    stack_.clear();
    stack_.push_back(start);
    std::size_t guard = 0;
    while (!stack_.empty() && guard++ < 64 * faces_.size() + 1024) {
        const int t = stack_.back();
        stack_.pop_back();
        const Face f = faces_[t];
        // new point sits at v[0], the edge to test is edge 1
        const int u = f.n[1];
        if (u < 0) {
            continue;
        }
        const int p = f.v[0], x = f.v[1], y = f.v[2];
        const Face g = faces_[u];
        int j = 0;
        while (j < 3 && !(g.v[j] == y && g.v[(j + 1) % 3] == x)) {
            ++j;
        }
        if (j == 3) {
            continue;
        }
        const int q = g.v[(j + 2) % 3];
        if (!in_circle(pts_[p], pts_[x], pts_[y], pts_[q])) {
            continue;
        }
        if (geometry::orient2d(pts_[p], pts_[x], pts_[q]) <= 0.0 ||
            geometry::orient2d(pts_[p], pts_[q], pts_[y]) <= 0.0) {
            continue;
        }
        const int n_px = f.n[0];
        const int n_yp = f.n[2];
        const int n_xq = g.n[(j + 1) % 3];
        const int n_qy = g.n[(j + 2) % 3];
        faces_[t] = {{p, x, q}, {n_px, n_xq, u}};
        faces_[u] = {{p, q, y}, {t, n_qy, n_yp}};
        replace_neighbor(n_xq, u, t);
        replace_neighbor(n_yp, t, u);
        stack_.push_back(t);
        stack_.push_back(u);
    }
}

std::vector<Tri2> DelaunayTriangulator::triangles() const {
    std::vector<Tri2> out;
    out.reserve(faces_.size());
    for (const Face& f : faces_) {
        if (f.v[0] < 3 || f.v[1] < 3 || f.v[2] < 3) {
            continue;
        }
        out.push_back({static_cast<std::size_t>(f.v[0] - 3), static_cast<std::size_t>(f.v[1] - 3),
                       static_cast<std::size_t>(f.v[2] - 3)});
    }
    return out;
}

std::vector<Vec2> DelaunayTriangulator::points() const {
    return {pts_.begin() + 3, pts_.end()};
}

std::size_t delaunay_flip_pass(std::span<const Vec2> points, std::vector<Tri2>& triangles) {
    struct HalfEdge {
        std::size_t lo, hi, tri;
        int local;
    };
    std::vector<HalfEdge> half;
    half.reserve(3 * triangles.size());
    for (std::size_t t = 0; t < triangles.size(); ++t) {
        for (int i = 0; i < 3; ++i) {
            const std::size_t a = triangles[t][i];
            const std::size_t b = triangles[t][(i + 1) % 3];
            half.push_back({std::min(a, b), std::max(a, b), t, i});
        }
    }
    std::sort(half.begin(), half.end(), [](const HalfEdge& x, const HalfEdge& y) {
        return std::tie(x.lo, x.hi, x.tri) < std::tie(y.lo, y.hi, y.tri);
    });

    std::vector<char> touched(triangles.size(), 0);
    std::size_t flips = 0;
    for (std::size_t i = 0; i + 1 < half.size(); ++i) {
        if (half[i].lo != half[i + 1].lo || half[i].hi != half[i + 1].hi) {
            continue;
        }
        const auto& h1 = half[i];
        const auto& h2 = half[i + 1];
        if (touched[h1.tri] || touched[h2.tri]) {
            continue;
        }
        auto& t1 = triangles[h1.tri];
        auto& t2 = triangles[h2.tri];
        const std::size_t a = t1[h1.local];
        const std::size_t b = t1[(h1.local + 1) % 3];
        const std::size_t c = t1[(h1.local + 2) % 3];
        const std::size_t d = t2[(h2.local + 2) % 3];
        if (!in_circle(points[a], points[b], points[c], points[d])) {
            continue;
        }
        if (geometry::orient2d(points[a], points[d], points[c]) <= 0.0 ||
            geometry::orient2d(points[d], points[b], points[c]) <= 0.0) {
            continue;
        }
        t1 = {a, d, c};
        t2 = {d, b, c};
        touched[h1.tri] = touched[h2.tri] = 1;
        ++flips;
    }
    return flips;
}

} // namespace hdremesh::planar
