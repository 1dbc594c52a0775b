#ifndef HDREMESH_MESH_HPP
#define HDREMESH_MESH_HPP

#include <array>
#include <span>
#include <vector>

#include "hdremesh/statistics.hpp"
#include "hdremesh/types.hpp"

namespace hdremesh {

// An element is degenerate when area < kDegenerateAreaFactor * (longest edge)^2.
inline constexpr double kDegenerateAreaFactor = 1e-12;

struct NodeRecord {
    Vec3 initial;
    Vec3 current;
};

struct ElementRecord {
    Triangle vertices;
};

// An edge has one (boundary) or two (interior) incident elements. For interior
// edges elements[0] < elements[1]; elements[1] is invalid_index on the boundary.
struct EdgeRecord {
    std::array<NodeIndex, 2> nodes;
    std::array<ElementIndex, 2> elements;

    bool is_boundary() const noexcept { return elements[1] == invalid_index; }
    std::size_t incident_count() const noexcept { return is_boundary() ? 1 : 2; }
};

// Local frame of one element: origin at the first vertex, two edge vectors and
// the unit normal u1 x u2 / |u1 x u2|.
struct ElementBasis {
    Vec3 origin;
    Vec3 u1;
    Vec3 u2;
    Vec3 normal;
};

// Triangle surface mesh with a reference (initial) and a deformed (current)
// position for every node. Connectivity is immutable after construction; node
// positions may be replaced wholesale through the validated setters.
class SurfaceMesh {
public:
    SurfaceMesh() = default;

    // Both configurations start equal to `positions`.
    static SurfaceMesh build(std::span<const Vec3> positions, std::span<const Triangle> triangles,
                             DimensionMode mode);

    static SurfaceMesh build_with_history(std::span<const Vec3> initial,
                                          std::span<const Vec3> current,
                                          std::span<const Triangle> triangles, DimensionMode mode);

    DimensionMode mode() const noexcept { return mode_; }

    std::size_t node_count() const noexcept { return nodes_.size(); }
    std::size_t element_count() const noexcept { return elements_.size(); }
    std::size_t edge_count() const noexcept { return edges_.size(); }

    const std::vector<NodeRecord>& nodes() const noexcept { return nodes_; }
    const std::vector<ElementRecord>& elements() const noexcept { return elements_; }
    const std::vector<EdgeRecord>& edges() const noexcept { return edges_; }

    const Triangle& triangle(ElementIndex e) const { return elements_.at(e).vertices; }
    const EdgeRecord& edge(EdgeIndex k) const { return edges_.at(k); }

    // Edge ids of an element, edge i opposite vertex (i + 2) % 3, i.e. edge i
    // joins vertices i and (i + 1) % 3.
    const std::array<EdgeIndex, 3>& element_edges(ElementIndex e) const {
        return element_edges_.at(e);
    }

    const Vec3& position(NodeIndex n, Configuration config) const {
        const auto& node = nodes_.at(n);
        return config == Configuration::initial ? node.initial : node.current;
    }

    std::vector<Vec3> positions(Configuration config) const;
    std::vector<Triangle> triangles() const;

    std::array<Vec3, 3> corners(ElementIndex e, Configuration config) const;

    // Replaces a configuration; validates finiteness, planarity in planar mode
    // and non-degeneracy of every element.
    void set_positions(Configuration config, std::span<const Vec3> positions);

    bool is_closed() const noexcept { return boundary_edge_count_ == 0; }
    std::size_t boundary_edge_count() const noexcept { return boundary_edge_count_; }

private:
    void build_edges();
    void validate_positions(std::span<const Vec3> positions, const char* what) const;

    DimensionMode mode_ = DimensionMode::surface3d;
    std::vector<NodeRecord> nodes_;
    std::vector<ElementRecord> elements_;
    std::vector<EdgeRecord> edges_;
    std::vector<std::array<EdgeIndex, 3>> element_edges_;
    std::size_t boundary_edge_count_ = 0;
};

// Free functions over a single element.

ElementBasis element_basis(const SurfaceMesh& mesh, ElementIndex e, Configuration config);

Vec3 centroid(const SurfaceMesh& mesh, ElementIndex e, Configuration config);

double element_area(const SurfaceMesh& mesh, ElementIndex e, Configuration config);

// 2 r_in / r_circ; 1 for equilateral, 0 for zero-area triangles.
double aspect_ratio(const Vec3& a, const Vec3& b, const Vec3& c);
double aspect_ratio(const SurfaceMesh& mesh, ElementIndex e, Configuration config);

bool is_degenerate(const Vec3& a, const Vec3& b, const Vec3& c);

std::vector<double> aspect_ratios(const SurfaceMesh& mesh, Configuration config);

QuantileSummary mesh_quality_summary(const SurfaceMesh& mesh, Configuration config);

double total_area(const SurfaceMesh& mesh, Configuration config);

// Median length over the edge table.
double median_edge_length(const SurfaceMesh& mesh, Configuration config);

// Closed boundary loops as ordered node lists, following element winding.
std::vector<std::vector<NodeIndex>> boundary_loops(const SurfaceMesh& mesh);

} // namespace hdremesh

#endif
