#ifndef HDREMESH_DELAUNAY_HPP
#define HDREMESH_DELAUNAY_HPP

#include <array>
#include <span>
#include <vector>

#include "hdremesh/types.hpp"

namespace hdremesh::planar {

using Tri2 = std::array<std::size_t, 3>;

// Incremental Delaunay triangulation (point insertion + Lawson flips) inside an
// enclosing super-triangle. Points closer than `merge_tolerance` to an existing
// point are not inserted again; insert() then returns the existing index.
class DelaunayTriangulator {
public:
    explicit DelaunayTriangulator(const Vec2& lo, const Vec2& hi);

    std::size_t insert(const Vec2& p);

    // Counter-clockwise triangles not touching the super-triangle, indexed into
    // points() (super vertices excluded).
    std::vector<Tri2> triangles() const;
    std::vector<Vec2> points() const;

private:
    struct Face {
        std::array<int, 3> v;
        std::array<int, 3> n; // n[i] is across edge (v[i], v[i+1])
    };

    int locate(const Vec2& p) const;
    void legalize(int t);
    void replace_neighbor(int face, int old_face, int new_face);
    int new_face(std::array<int, 3> v, std::array<int, 3> n);

    std::vector<Vec2> pts_; // first three are super vertices
    std::vector<Face> faces_;
    std::vector<int> stack_;
    mutable int last_ = 0;
    double merge_tolerance_ = 0.0;
};

// Flips interior edges that violate the empty-circumcircle criterion. Edges
// with a single incident triangle are never touched. Returns the flip count.
std::size_t delaunay_flip_pass(std::span<const Vec2> points, std::vector<Tri2>& triangles);

} // namespace hdremesh::planar

#endif
