#include "hdremesh/search.hpp"

#include <cmath>
#include <ostream>
#include <sstream>
#include <string>

#include "hdremesh/csv.hpp"
#include "hdremesh/errors.hpp"
#include "hdremesh/geometry.hpp"

namespace hdremesh {

namespace {

constexpr double kFoldBackNormTolerance = 1e-8;

std::string format_point(const Vec3& p) {
    std::ostringstream os;
    os.precision(17);
    os << '(' << p.x() << ", " << p.y() << ", " << p.z() << ')';
    return os.str();
}

bool lexicographically_closer(double d2, std::size_t id, double best_d2, std::size_t best_id) {
    return d2 < best_d2 || (d2 == best_d2 && id < best_id);
}

double centroid_distance_squared(const Vec3& c, const Vec3& p) { return (c - p).squaredNorm(); }

double edge_distance_squared(const SurfaceMesh& mesh, EdgeIndex k, const Vec3& p) {
    const auto& edge = mesh.edge(k);
    return geometry::point_segment_distance_squared(
        p, mesh.position(edge.nodes[0], Configuration::current),
        mesh.position(edge.nodes[1], Configuration::current));
}

} // namespace

std::string_view to_string(SearchCase c) {
    switch (c) {
    case SearchCase::case1: return "case1";
    case SearchCase::case2: return "case2";
    case SearchCase::case3: return "case3";
    case SearchCase::boundary_edge: return "boundary_edge";
    }
    return "unknown";
}

Vec3 prism_barycentric(const SurfaceMesh& mesh, ElementIndex e, const Vec3& p,
                       Configuration config) {
    const ElementBasis basis = element_basis(mesh, e, config);
    const Vec3 d = p - basis.origin;
    Mat2 gram;
    gram << basis.u1.dot(basis.u1), basis.u1.dot(basis.u2), basis.u1.dot(basis.u2),
        basis.u2.dot(basis.u2);
    const Vec2 rhs(d.dot(basis.u1), d.dot(basis.u2));
    const Vec2 ab = gram.inverse() * rhs;
    return {1.0 - ab.x() - ab.y(), ab.x(), ab.y()};
}

bool point_in_prism(const SurfaceMesh& mesh, ElementIndex e, const Vec3& p, double tolerance) {
    const Vec3 bary = prism_barycentric(mesh, e, p);
    return bary.minCoeff() >= -tolerance;
}

DividingPlane dividing_plane(const SurfaceMesh& mesh, EdgeIndex k) {
    const auto& edge = mesh.edge(k);
    if (edge.is_boundary()) {
        throw ArgumentError("dividing plane requested for boundary edge " + std::to_string(k));
    }
    const ElementIndex e1 = edge.elements[0];
    const ElementIndex e2 = edge.elements[1];
    const Vec3 n1 = element_basis(mesh, e1, Configuration::current).normal;
    const Vec3 n2 = element_basis(mesh, e2, Configuration::current).normal;
    const Vec3 mean_normal = 0.5 * (n1 + n2);
    if (mean_normal.norm() < kFoldBackNormTolerance) {
        throw DegeneracyError("elements adjacent to edge " + std::to_string(k) + " fold back",
                              e1);
    }
    const Vec3& a = mesh.position(edge.nodes[0], Configuration::current);
    const Vec3& b = mesh.position(edge.nodes[1], Configuration::current);
    Vec3 normal = (b - a).cross(mean_normal);
    const double len = normal.norm();
    if (!(len > 0.0)) {
        throw DegeneracyError("edge " + std::to_string(k) + " has zero length", e1);
    }
    normal /= len;
    if (normal.dot(centroid(mesh, e1, Configuration::current) - a) < 0.0) {
        normal = -normal;
    }
    return {a, normal};
}

double point_element_distance_squared(const SurfaceMesh& mesh, ElementIndex e, const Vec3& p,
                                      Configuration config) {
    const auto [a, b, c] = mesh.corners(e, config);
    return geometry::point_triangle_distance_squared(p, a, b, c);
}

ElementIndex nearest_centroid_element_exhaustive(const SurfaceMesh& mesh, const Vec3& p) {
    ElementIndex best = invalid_index;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (ElementIndex e = 0; e < mesh.element_count(); ++e) {
        const double d2 = centroid_distance_squared(centroid(mesh, e, Configuration::current), p);
        if (lexicographically_closer(d2, e, best_d2, best)) {
            best = e;
            best_d2 = d2;
        }
    }
    return best;
}

EdgeIndex nearest_edge_exhaustive(const SurfaceMesh& mesh, const Vec3& p) {
    EdgeIndex best = invalid_index;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (EdgeIndex k = 0; k < mesh.edge_count(); ++k) {
        const double d2 = edge_distance_squared(mesh, k, p);
        if (lexicographically_closer(d2, k, best_d2, best)) {
            best = k;
            best_d2 = d2;
        }
    }
    return best;
}

ElementLocator::ElementLocator(const SurfaceMesh& mesh) : mesh_(&mesh) {
    if (mesh.element_count() == 0) {
        throw ArgumentError("cannot search an empty mesh");
    }
    centroids_.reserve(mesh.element_count());
    std::vector<geometry::Aabb> centroid_boxes;
    centroid_boxes.reserve(mesh.element_count());
    for (ElementIndex e = 0; e < mesh.element_count(); ++e) {
        centroids_.push_back(centroid(mesh, e, Configuration::current));
        geometry::Aabb box;
        box.expand(centroids_.back());
        centroid_boxes.push_back(box);
    }
    std::vector<geometry::Aabb> edge_boxes;
    edge_boxes.reserve(mesh.edge_count());
    for (const auto& edge : mesh.edges()) {
        geometry::Aabb box;
        box.expand(mesh.position(edge.nodes[0], Configuration::current));
        box.expand(mesh.position(edge.nodes[1], Configuration::current));
        edge_boxes.push_back(box);
    }
    const double cell = median_edge_length(mesh, Configuration::current);
    centroid_grid_ = SpatialGrid(centroid_boxes, cell);
    edge_grid_ = SpatialGrid(edge_boxes, cell);
}

ElementIndex ElementLocator::nearest_centroid_element(const Vec3& p) const {
    return centroid_grid_
        .nearest(p, [&](std::size_t e) { return centroid_distance_squared(centroids_[e], p); })
        .item;
}

EdgeIndex ElementLocator::nearest_edge(const Vec3& p) const {
    return edge_grid_.nearest(p, [&](std::size_t k) { return edge_distance_squared(*mesh_, k, p); })
        .item;
}

SearchResult ElementLocator::find_nearest_element(const Vec3& p, double tolerance) const {
    const SurfaceMesh& mesh = *mesh_;
    SearchResult result;
    try {
        const ElementIndex j = nearest_centroid_element(p);
        result.diagnostics.centroid_element = j;
        result.diagnostics.centroid_distance = (centroids_[j] - p).norm();
        if (point_in_prism(mesh, j, p, tolerance)) {
            result.element = j;
            result.case_used = SearchCase::case1;
            return result;
        }

        const EdgeIndex k = nearest_edge(p);
        const auto& edge = mesh.edge(k);
        result.diagnostics.edge = k;
        result.diagnostics.edge_distance = std::sqrt(edge_distance_squared(mesh, k, p));
        if (edge.is_boundary()) {
            result.element = edge.elements[0];
            result.case_used = SearchCase::boundary_edge;
            return result;
        }

        const ElementIndex e1 = edge.elements[0];
        const ElementIndex e2 = edge.elements[1];
        const bool in1 = point_in_prism(mesh, e1, p, tolerance);
        const bool in2 = point_in_prism(mesh, e2, p, tolerance);
        if (in1 != in2) {
            result.element = in1 ? e1 : e2;
            result.case_used = SearchCase::case2;
            return result;
        }

        result.case_used = SearchCase::case3;
        try {
            const DividingPlane plane = dividing_plane(mesh, k);
            const double side = plane.signed_distance(p);
            result.diagnostics.plane_signed_distance = side;
            result.element = side > 0.0 ? e1 : e2;
        } catch (const DegeneracyError&) {
            result.diagnostics.fold_back = true;
            const double d1 = point_element_distance_squared(mesh, e1, p);
            const double d2 = point_element_distance_squared(mesh, e2, p);
            result.element = d2 < d1 ? e2 : e1;
        }
        return result;
    } catch (const DegeneracyError& err) {
        throw DegeneracyError(std::string(err.what()) + " while locating point " + format_point(p),
                              err.element());
    }
}

SearchResult find_nearest_element(const SurfaceMesh& mesh, const Vec3& p, double tolerance) {
    return ElementLocator(mesh).find_nearest_element(p, tolerance);
}

void write_search_csv(std::ostream& out, std::span<const Vec3> points,
                      std::span<const SearchResult> results) {
    out << "x,y,z,element,case\n";
    for (std::size_t i = 0; i < points.size() && i < results.size(); ++i) {
        out << format_number(points[i].x()) << ',' << format_number(points[i].y()) << ',' << format_number(points[i].z()) << ','
            << results[i].element << ',' << to_string(results[i].case_used) << '\n';
    }
}

} // namespace hdremesh
