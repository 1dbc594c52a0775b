#include "hdremesh/skalak.hpp"

#include <cmath>
#include <string>

#include "hdremesh/errors.hpp"

namespace hdremesh {

namespace {

constexpr double kSingularTolerance = 1e-14;

// Edge vectors of an element in its own tangent frame, as columns.
Mat2 tangent_edges(const ElementBasis& basis) {
    const Vec3 e1 = basis.u1.normalized();
    const Vec3 e2 = basis.normal.cross(e1);
    Mat2 d;
    d << basis.u1.dot(e1), basis.u2.dot(e1), 0.0, basis.u2.dot(e2);
    return d;
}

Mat2 reference_edges(const SurfaceMesh& mesh, ElementIndex e) {
    return tangent_edges(element_basis(mesh, e, Configuration::initial));
}

StrainState from_cauchy_green(double trace, double det) {
    const double disc = std::sqrt(std::max(0.0, trace * trace - 4.0 * det));
    const double l1sq = 0.5 * (trace + disc);
    const double l2sq = l1sq > 0.0 ? det / l1sq : 0.0;
    return {trace - 2.0, det - 1.0, std::sqrt(l1sq), std::sqrt(std::max(0.0, l2sq))};
}

} // namespace

void SkalakParams::validate() const {
    if (!(kappa_s >= 0.0) || !(kappa_alpha >= 0.0)) {
        throw ArgumentError("Skalak moduli must be non-negative");
    }
}

Mat2 deformation_gradient(const SurfaceMesh& mesh, ElementIndex e) {
    const Mat2 d0 = reference_edges(mesh, e);
    const Mat2 dc = tangent_edges(element_basis(mesh, e, Configuration::current));
    return dc * d0.inverse();
}

StrainState strain_invariants(const Mat2& F) {
    const double det_f = F.determinant();
    if (!(std::abs(det_f) > kSingularTolerance * std::max(1.0, F.squaredNorm()))) {
        throw DegeneracyError("singular deformation gradient");
    }
    const Mat2 c = F.transpose() * F;
    return from_cauchy_green(c.trace(), det_f * det_f);
}

double skalak_strain_term(const StrainState& s, double kappa_s) {
    return kappa_s / 12.0 * (s.I1 * s.I1 + 2.0 * s.I1 - 2.0 * s.I2);
}

double skalak_energy_density(const StrainState& s, const SkalakParams& params) {
    return skalak_strain_term(s, params.kappa_s) + params.kappa_alpha / 12.0 * s.I2 * s.I2;
}

std::optional<StrainState> exact_invariants_analytic(const AnalyticDeformation& deformation,
                                                     const Vec3& initial_point, double time) {
    const Mat3 j = deformation.jacobian(initial_point, time);
    const Mat2 in_plane = j.topLeftCorner<2, 2>();
    try {
        return strain_invariants(in_plane);
    } catch (const DegeneracyError&) {
        return std::nullopt;
    }
}

StrainState quadratic_closed_form_invariants(const Vec3& x) {
    const double s1 = 2.0 * x.x();
    const double s2 = 2.0 * x.y();
    StrainState s;
    s.I1 = s1 * s1 + s2 * s2 - 2.0;
    s.I2 = s1 * s1 * s2 * s2 - 1.0;
    s.lambda1 = std::max(std::abs(s1), std::abs(s2));
    s.lambda2 = std::min(std::abs(s1), std::abs(s2));
    return s;
}

double element_energy_density(const SurfaceMesh& mesh, ElementIndex e, const SkalakParams& params) {
    return skalak_energy_density(strain_invariants(deformation_gradient(mesh, e)), params);
}

double total_elastic_energy(const SurfaceMesh& mesh, const SkalakParams& params) {
    double energy = 0.0;
    for (ElementIndex e = 0; e < mesh.element_count(); ++e) {
        energy += element_energy_density(mesh, e, params) *
                  element_area(mesh, e, Configuration::initial);
    }
    return energy;
}

std::vector<Vec3> elastic_nodal_forces(const SurfaceMesh& mesh, const SkalakParams& params) {
    std::vector<Vec3> forces(mesh.node_count(), Vec3::Zero());
    using Mat32 = Eigen::Matrix<double, 3, 2>;
    for (ElementIndex e = 0; e < mesh.element_count(); ++e) {
        const auto& tri = mesh.triangle(e);
        const Mat2 d0 = reference_edges(mesh, e);
        const Mat2 d0_inv = d0.inverse();
        const double area0 = 0.5 * std::abs(d0.determinant());

        const auto [x0, x1, x2] = mesh.corners(e, Configuration::current);
        Mat32 ds;
        ds.col(0) = x1 - x0;
        ds.col(1) = x2 - x0;
        if (is_degenerate(x0, x1, x2)) {
            throw DegeneracyError("element " + std::to_string(e) + " is degenerate", e);
        }

        const Mat32 f = ds * d0_inv;
        const Mat2 c = f.transpose() * f;
        const double i1 = c.trace() - 2.0;
        const double i2 = c.determinant() - 1.0;
        const double dpsi_di1 = params.kappa_s / 12.0 * (2.0 * i1 + 2.0);
        const double dpsi_di2 = -params.kappa_s / 6.0 + params.kappa_alpha / 6.0 * i2;

        Mat2 adj_c;
        adj_c << c(1, 1), -c(0, 1), -c(1, 0), c(0, 0);
        // dPsi/dC, then dPsi/dF = 2 F dPsi/dC
        const Mat2 s = dpsi_di1 * Mat2::Identity() + dpsi_di2 * adj_c;
        const Mat32 grad = area0 * (2.0 * f * s) * d0_inv.transpose();

        forces[tri[0]] += grad.col(0) + grad.col(1);
        forces[tri[1]] -= grad.col(0);
        forces[tri[2]] -= grad.col(1);
    }
    return forces;
}

std::vector<Vec3> pressure_nodal_forces(const SurfaceMesh& mesh, double pressure,
                                        PressureOptions options) {
    if (!mesh.is_closed() && !options.allow_open_surface) {
        throw ConfigError("pressure loading needs a closed surface (" +
                          std::to_string(mesh.boundary_edge_count()) + " boundary edges)");
    }
    std::vector<Vec3> forces(mesh.node_count(), Vec3::Zero());
    if (pressure == 0.0) {
        return forces;
    }
    for (ElementIndex e = 0; e < mesh.element_count(); ++e) {
        const auto& tri = mesh.triangle(e);
        const auto [a, b, c] = mesh.corners(e, Configuration::current);
        // A n = (b - a) x (c - a) / 2
        const Vec3 share = pressure * (b - a).cross(c - a) / 6.0;
        for (NodeIndex v : tri) {
            forces[v] += share;
        }
    }
    return forces;
}

MembraneSimState step_overdamped(const MembraneSimState& state, double dt) {
    if (!(dt > 0.0)) {
        throw ArgumentError("time step must be positive");
    }
    const SurfaceMesh& mesh = state.mesh;
    std::vector<Vec3> forces;
    try {
        forces = elastic_nodal_forces(mesh, state.params);
    } catch (const DegeneracyError& err) {
        throw DivergenceError(std::string("simulation diverged: ") + err.what(), state.time,
                              mesh.triangle(err.element().value_or(0))[0]);
    }
    if (state.pressure != 0.0) {
        const auto pressure = pressure_nodal_forces(mesh, state.pressure);
        for (std::size_t i = 0; i < forces.size(); ++i) {
            forces[i] += pressure[i];
        }
    }

    std::size_t worst = 0;
    double worst_norm = -1.0;
    for (std::size_t i = 0; i < forces.size(); ++i) {
        if (!forces[i].allFinite()) {
            throw DivergenceError("simulation diverged: non-finite force at node " +
                                      std::to_string(i),
                                  state.time, i);
        }
        const double n = forces[i].norm();
        if (n > worst_norm) {
            worst_norm = n;
            worst = i;
        }
    }

    std::vector<Vec3> next = mesh.positions(Configuration::current);
    for (std::size_t i = 0; i < next.size(); ++i) {
        next[i] += state.mobility * dt * forces[i];
    }

    MembraneSimState out = state;
    try {
        out.mesh.set_positions(Configuration::current, next);
    } catch (const Error& err) {
        throw DivergenceError(std::string("simulation diverged: ") + err.what(), state.time,
                              worst);
    }
    out.time = state.time + dt;
    return out;
}

} // namespace hdremesh
