#ifndef HDREMESH_DEFORMATION_HPP
#define HDREMESH_DEFORMATION_HPP

#include <string_view>

#include "hdremesh/types.hpp"

namespace hdremesh {

// Prescribed analytic deformations used to validate remeshing.
//   square_quadratic            (x, y)    -> (x^2, y^2)
//   cylinder_sinusoidal         (x, y, z) -> (r cos(th) + sin z, 1.5 r sin(th), z)
//   time_interpolated_quadratic x0 + (t / t_end) (f(x0) - x0), f the square map
//   identity
struct AnalyticDeformation {
    enum class Kind { identity, square_quadratic, cylinder_sinusoidal, time_interpolated_quadratic };

    Kind kind = Kind::identity;
    double t_end = 60.0;

    static AnalyticDeformation identity() { return {Kind::identity, 0.0}; }
    static AnalyticDeformation square_quadratic() { return {Kind::square_quadratic, 0.0}; }
    static AnalyticDeformation cylinder_sinusoidal() { return {Kind::cylinder_sinusoidal, 0.0}; }
    static AnalyticDeformation time_interpolated_quadratic(double t_end) {
        return {Kind::time_interpolated_quadratic, t_end};
    }

    bool is_time_dependent() const noexcept { return kind == Kind::time_interpolated_quadratic; }

    // `time` is only read by the time-interpolated kind and must lie in [0, t_end].
    Vec3 evaluate(const Vec3& x, double time = 0.0) const;

    Mat3 jacobian(const Vec3& x, double time = 0.0) const;
};

std::string_view to_string(AnalyticDeformation::Kind kind);

} // namespace hdremesh

#endif
