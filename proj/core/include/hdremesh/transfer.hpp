#ifndef HDREMESH_TRANSFER_HPP
#define HDREMESH_TRANSFER_HPP

#include <array>
#include <iosfwd>
#include <vector>

#include "hdremesh/mesh.hpp"
#include "hdremesh/search.hpp"

namespace hdremesh {

// Coordinates of a point in an element frame:
// point = origin + c1 u1 + c2 u2 + c3 normal.
struct BasisCoefficients {
    double c1 = 0.0;
    double c2 = 0.0;
    double c3 = 0.0;
};

BasisCoefficients basis_coefficients(const ElementBasis& basis, const Vec3& point);

Vec3 reconstruct(const ElementBasis& basis, const BasisCoefficients& c);

struct TransferEntry {
    NodeIndex node = invalid_index;
    ElementIndex element = invalid_index;
    SearchCase case_used = SearchCase::case1;
    double c3 = 0.0;
};

struct TransferReport {
    std::vector<TransferEntry> entries;
    std::array<std::size_t, 4> case_counts{}; // indexed by SearchCase

    std::size_t count(SearchCase c) const { return case_counts[static_cast<std::size_t>(c)]; }
    double max_abs_c3() const;
    // "node,element,case,c3" rows in node order.
    void write_csv(std::ostream& out) const;
};

struct MappedPoint {
    Vec3 initial;
    TransferEntry entry;
};

// Finds the nearest old element in the current configuration, expresses the
// point in that element's current frame, and rebuilds it in the element's
// initial frame.
MappedPoint map_to_initial(const ElementLocator& old_mesh, const Vec3& point,
                           double tolerance = kDefaultContainmentTolerance);

MappedPoint map_to_initial(const SurfaceMesh& old_mesh, const Vec3& point,
                           double tolerance = kDefaultContainmentTolerance);

// Applies element e's linear map (initial frame -> current frame) to a point
// given in the initial configuration.
Vec3 deform_through_element(const SurfaceMesh& mesh, ElementIndex e, const Vec3& initial_point);

struct TransferOutcome {
    SurfaceMesh mesh;
    TransferReport report;
};

// Assigns every node of `new_mesh` an initial position by mapping its current
// position through `old_mesh`. Connectivity and current positions of the new
// mesh are kept. Any failure aborts with a TransferError naming the node.
TransferOutcome transfer_initial_configuration(const SurfaceMesh& old_mesh,
                                               const SurfaceMesh& new_mesh,
                                               double tolerance = kDefaultContainmentTolerance);

} // namespace hdremesh

#endif
