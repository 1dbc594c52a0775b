#ifndef HDREMESH_SEARCH_HPP
#define HDREMESH_SEARCH_HPP

#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "hdremesh/mesh.hpp"
#include "hdremesh/spatial_grid.hpp"
#include "hdremesh/types.hpp"

namespace hdremesh {

// Barycentric slack used by the prism containment test.
inline constexpr double kDefaultContainmentTolerance = 1e-9;

enum class SearchCase { case1, case2, case3, boundary_edge };

std::string_view to_string(SearchCase c);

struct SearchDiagnostics {
    ElementIndex centroid_element = invalid_index;
    double centroid_distance = 0.0;
    std::optional<EdgeIndex> edge;
    std::optional<double> edge_distance;
    std::optional<double> plane_signed_distance;
    bool fold_back = false; // dividing plane undefined, resolved by triangle distance
};

struct SearchResult {
    ElementIndex element = invalid_index;
    SearchCase case_used = SearchCase::case1;
    SearchDiagnostics diagnostics;
};

// Plane through an interior edge containing the mean normal of its two
// elements; `normal` points toward the first incident element.
struct DividingPlane {
    Vec3 point;
    Vec3 normal;

    double signed_distance(const Vec3& p) const { return normal.dot(p - point); }
};

// Barycentric coordinates of the projection of p onto the element's plane.
Vec3 prism_barycentric(const SurfaceMesh& mesh, ElementIndex e, const Vec3& p,
                       Configuration config = Configuration::current);

// p lies in the infinite extrusion of element e along its normal when every
// barycentric coordinate of its projection is >= -tolerance.
bool point_in_prism(const SurfaceMesh& mesh, ElementIndex e, const Vec3& p,
                    double tolerance = kDefaultContainmentTolerance);

DividingPlane dividing_plane(const SurfaceMesh& mesh, EdgeIndex edge);

double point_element_distance_squared(const SurfaceMesh& mesh, ElementIndex e, const Vec3& p,
                                      Configuration config = Configuration::current);

// Exhaustive scans; ties resolve to the lowest id.
ElementIndex nearest_centroid_element_exhaustive(const SurfaceMesh& mesh, const Vec3& p);
EdgeIndex nearest_edge_exhaustive(const SurfaceMesh& mesh, const Vec3& p);

// Nearest-element search over the current configuration of a mesh, accelerated
// by bucket grids over element centroids and edges. Results are identical to
// the exhaustive scans. The mesh must outlive the locator and stay unchanged.
class ElementLocator {
public:
    explicit ElementLocator(const SurfaceMesh& mesh);

    const SurfaceMesh& mesh() const noexcept { return *mesh_; }

    ElementIndex nearest_centroid_element(const Vec3& p) const;
    EdgeIndex nearest_edge(const Vec3& p) const;

    // Centroid test, then nearest-edge test, then the dividing plane.
    SearchResult find_nearest_element(const Vec3& p,
                                      double tolerance = kDefaultContainmentTolerance) const;

private:
    const SurfaceMesh* mesh_;
    std::vector<Vec3> centroids_;
    SpatialGrid centroid_grid_;
    SpatialGrid edge_grid_;
};

SearchResult find_nearest_element(const SurfaceMesh& mesh, const Vec3& p,
                                  double tolerance = kDefaultContainmentTolerance);

// Debug export: one "x,y,z,element,case" row per query.
void write_search_csv(std::ostream& out, std::span<const Vec3> points,
                      std::span<const SearchResult> results);

} // namespace hdremesh

#endif
