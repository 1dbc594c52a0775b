#ifndef HDREMESH_SKALAK_HPP
#define HDREMESH_SKALAK_HPP

#include <optional>
#include <vector>

#include "hdremesh/deformation.hpp"
#include "hdremesh/mesh.hpp"

namespace hdremesh {

// Strain modulus kappa_s and area-dilation modulus kappa_alpha.
struct SkalakParams {
    double kappa_s = 0.01;
    double kappa_alpha = 0.01e-4;

    void validate() const;
};

// I1 = l1^2 + l2^2 - 2, I2 = l1^2 l2^2 - 1 with principal stretches l1 >= l2.
struct StrainState {
    double I1 = 0.0;
    double I2 = 0.0;
    double lambda1 = 1.0;
    double lambda2 = 1.0;
};

// In-plane deformation gradient of element e: maps initial edge vectors to
// current edge vectors, each expressed in its element's orthonormal tangent
// frame (e1 along the first edge, e2 = normal x e1).
Mat2 deformation_gradient(const SurfaceMesh& mesh, ElementIndex e);

// Throws DegeneracyError for singular F.
StrainState strain_invariants(const Mat2& F);

double skalak_energy_density(const StrainState& state, const SkalakParams& params);

// Strain part only: kappa_s / 12 (I1^2 + 2 I1 - 2 I2).
double skalak_strain_term(const StrainState& state, double kappa_s);

// Invariants of the analytic Jacobian at an initial point (in-plane block).
// Empty when the Jacobian is singular there.
std::optional<StrainState> exact_invariants_analytic(const AnalyticDeformation& deformation,
                                                     const Vec3& initial_point,
                                                     double time = 0.0);

// Closed form for the square map with stretches (2x, 2y):
// I1 = sum (2 x_i)^2 - 2, I2 = prod (2 x_i)^2 - 1.
StrainState quadratic_closed_form_invariants(const Vec3& initial_point);

double element_energy_density(const SurfaceMesh& mesh, ElementIndex e, const SkalakParams& params);

// Sum over elements of psi times initial element area.
double total_elastic_energy(const SurfaceMesh& mesh, const SkalakParams& params);

// Exact negative gradient of total_elastic_energy with respect to current
// node positions, accumulated in element order.
std::vector<Vec3> elastic_nodal_forces(const SurfaceMesh& mesh, const SkalakParams& params);

struct PressureOptions {
    bool allow_open_surface = false;
};

// p A_j n_j / 3 added to each vertex of element j.
std::vector<Vec3> pressure_nodal_forces(const SurfaceMesh& mesh, double pressure,
                                        PressureOptions options = {});

struct MembraneSimState {
    SurfaceMesh mesh;
    SkalakParams params;
    double pressure = 0.0;
    double mobility = 1.0;
    double time = 0.0;
};

// x += mobility * (elastic + pressure) * dt; time += dt.
MembraneSimState step_overdamped(const MembraneSimState& state, double dt);

} // namespace hdremesh

#endif
