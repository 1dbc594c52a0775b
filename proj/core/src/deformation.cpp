#include "hdremesh/deformation.hpp"

#include <cmath>
#include <string>

#include "hdremesh/errors.hpp"

namespace hdremesh {

namespace {

double time_fraction(const AnalyticDeformation& d, double time) {
    if (!(d.t_end > 0.0)) {
        throw ArgumentError("time-interpolated deformation needs t_end > 0");
    }
    if (!(time >= 0.0 && time <= d.t_end)) {
        throw ArgumentError("time " + std::to_string(time) + " outside [0, " +
                            std::to_string(d.t_end) + "]");
    }
    return time / d.t_end;
}

} // namespace

Vec3 AnalyticDeformation::evaluate(const Vec3& x, double time) const {
    switch (kind) {
    case Kind::identity:
        return x;
    case Kind::square_quadratic:
        return {x.x() * x.x(), x.y() * x.y(), x.z()};
    case Kind::cylinder_sinusoidal: {
        const double r = std::hypot(x.x(), x.y());
        const double theta = std::atan2(x.y(), x.x());
        return {r * std::cos(theta) + std::sin(x.z()), 1.5 * r * std::sin(theta), x.z()};
    }
    case Kind::time_interpolated_quadratic: {
        const double s = time_fraction(*this, time);
        const Vec3 target(x.x() * x.x(), x.y() * x.y(), x.z());
        return x + s * (target - x);
    }
    }
    return x;
}

Mat3 AnalyticDeformation::jacobian(const Vec3& x, double time) const {
    Mat3 j = Mat3::Identity();
    switch (kind) {
    case Kind::identity:
        break;
    case Kind::square_quadratic:
        j(0, 0) = 2.0 * x.x();
        j(1, 1) = 2.0 * x.y();
        break;
    case Kind::cylinder_sinusoidal:
        // r cos(th) = x and r sin(th) = y
        j(0, 2) = std::cos(x.z());
        j(1, 1) = 1.5;
        break;
    case Kind::time_interpolated_quadratic: {
        const double s = time_fraction(*this, time);
        j(0, 0) = 1.0 + s * (2.0 * x.x() - 1.0);
        j(1, 1) = 1.0 + s * (2.0 * x.y() - 1.0);
        break;
    }
    }
    return j;
}

std::string_view to_string(AnalyticDeformation::Kind kind) {
    switch (kind) {
    case AnalyticDeformation::Kind::identity: return "identity";
    case AnalyticDeformation::Kind::square_quadratic: return "square-quadratic";
    case AnalyticDeformation::Kind::cylinder_sinusoidal: return "cylinder-sinusoidal";
    case AnalyticDeformation::Kind::time_interpolated_quadratic:
        return "time-interpolated-quadratic";
    }
    return "unknown";
}

} // namespace hdremesh
