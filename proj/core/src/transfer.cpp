#include "hdremesh/transfer.hpp"

#include <cmath>
#include <ostream>
#include <string>

#include <Eigen/LU>

#include "hdremesh/csv.hpp"
#include "hdremesh/errors.hpp"

namespace hdremesh {

BasisCoefficients basis_coefficients(const ElementBasis& basis, const Vec3& point) {
    Mat3 frame;
    frame.col(0) = basis.u1;
    frame.col(1) = basis.u2;
    frame.col(2) = basis.normal;
    const double area2 = basis.u1.cross(basis.u2).norm();
    const double longest2 = std::max({basis.u1.squaredNorm(), basis.u2.squaredNorm(),
                                      (basis.u2 - basis.u1).squaredNorm()});
    if (!(0.5 * area2 > kDegenerateAreaFactor * longest2) || !basis.normal.allFinite()) {
        throw DegeneracyError("singular element frame");
    }
    const Vec3 c = frame.partialPivLu().solve(point - basis.origin);
    return {c.x(), c.y(), c.z()};
}

Vec3 reconstruct(const ElementBasis& basis, const BasisCoefficients& c) {
    return basis.origin + c.c1 * basis.u1 + c.c2 * basis.u2 + c.c3 * basis.normal;
}

double TransferReport::max_abs_c3() const {
    double m = 0.0;
    for (const auto& e : entries) {
        m = std::max(m, std::abs(e.c3));
    }
    return m;
}

void TransferReport::write_csv(std::ostream& out) const {
    out << "node,element,case,c3\n";
    for (const auto& e : entries) {
        out << e.node << ',' << e.element << ',' << to_string(e.case_used) << ','
            << format_number(e.c3) << '\n';
    }
}

MappedPoint map_to_initial(const ElementLocator& locator, const Vec3& point, double tolerance) {
    const SurfaceMesh& mesh = locator.mesh();
    const SearchResult found = locator.find_nearest_element(point, tolerance);
    const ElementBasis current = element_basis(mesh, found.element, Configuration::current);
    const ElementBasis initial = element_basis(mesh, found.element, Configuration::initial);
    const BasisCoefficients c = basis_coefficients(current, point);
    MappedPoint out;
    out.initial = reconstruct(initial, c);
    out.entry = {invalid_index, found.element, found.case_used, c.c3};
    return out;
}

MappedPoint map_to_initial(const SurfaceMesh& old_mesh, const Vec3& point, double tolerance) {
    return map_to_initial(ElementLocator(old_mesh), point, tolerance);
}

Vec3 deform_through_element(const SurfaceMesh& mesh, ElementIndex e, const Vec3& initial_point) {
    const ElementBasis initial = element_basis(mesh, e, Configuration::initial);
    const ElementBasis current = element_basis(mesh, e, Configuration::current);
    return reconstruct(current, basis_coefficients(initial, initial_point));
}

TransferOutcome transfer_initial_configuration(const SurfaceMesh& old_mesh,
                                               const SurfaceMesh& new_mesh, double tolerance) {
    const ElementLocator locator(old_mesh);
    TransferReport report;
    report.entries.reserve(new_mesh.node_count());
    std::vector<Vec3> mapped(new_mesh.node_count());
    for (NodeIndex n = 0; n < new_mesh.node_count(); ++n) {
        const Vec3& p = new_mesh.position(n, Configuration::current);
        try {
            MappedPoint m = map_to_initial(locator, p, tolerance);
            if (!m.initial.allFinite()) {
                throw TransferError("node " + std::to_string(n) + " mapped to a non-finite point",
                                    n);
            }
            m.entry.node = n;
            mapped[n] = m.initial;
            if (new_mesh.mode() == DimensionMode::planar2d) {
                mapped[n].z() = 0.0;
            }
            report.entries.push_back(m.entry);
            ++report.case_counts[static_cast<std::size_t>(m.entry.case_used)];
        } catch (const TransferError&) {
            throw;
        } catch (const Error& err) {
            throw TransferError("node " + std::to_string(n) + " could not be mapped: " + err.what(),
                                n);
        }
    }

    // Commit only after every node mapped.
    SurfaceMesh out = new_mesh;
    out.set_positions(Configuration::initial, mapped);
    return {std::move(out), std::move(report)};
}

} // namespace hdremesh
