#include "hdremesh/shapes.hpp"

#include <cmath>
#include <map>
#include <numbers>

#include "hdremesh/errors.hpp"
#include "hdremesh/random.hpp"
#include "hdremesh/remesh.hpp"

namespace hdremesh::shapes {

namespace {

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw ArgumentError(std::string(what) + " must be positive and finite");
    }
}

} // namespace

SurfaceMesh square(double side, double edge_length, std::uint64_t seed) {
    require_positive(side, "side length");
    require_positive(edge_length, "edge length");
    const std::vector<Vec2> loop{{0.0, 0.0}, {side, 0.0}, {side, side}, {0.0, side}};
    const planar::PlanarMesh generated = planar::generate_planar_mesh(loop, edge_length, seed);
    std::vector<Vec3> positions;
    positions.reserve(generated.points.size());
    for (const Vec2& p : generated.points) {
        positions.emplace_back(p.x(), p.y(), 0.0);
    }
    return SurfaceMesh::build(positions, generated.triangles, DimensionMode::planar2d);
}

SurfaceMesh cylinder(double radius, double height, double edge_length, std::uint64_t seed) {
    require_positive(radius, "radius");
    require_positive(height, "height");
    require_positive(edge_length, "edge length");
    const auto around = std::max<long>(6, std::lround(2.0 * std::numbers::pi * radius / edge_length));
    const auto rows =
        std::max<long>(1, std::lround(height / (edge_length * std::sqrt(3.0) / 2.0)));
    const double dtheta = 2.0 * std::numbers::pi / static_cast<double>(around);
    Rng rng(seed);
    const double phase = uniform(rng, 0.0, dtheta);

    std::vector<Vec3> positions;
    positions.reserve(static_cast<std::size_t>((rows + 1) * around));
    for (long r = 0; r <= rows; ++r) {
        const double z = height * static_cast<double>(r) / static_cast<double>(rows);
        const double shift = (r % 2 == 0) ? 0.0 : 0.5;
        for (long i = 0; i < around; ++i) {
            const double theta = phase + (static_cast<double>(i) + shift) * dtheta;
            positions.emplace_back(radius * std::cos(theta), radius * std::sin(theta), z);
        }
    }
    auto id = [&](long r, long i) {
        return static_cast<NodeIndex>(r * around + ((i % around) + around) % around);
    };
    std::vector<Triangle> triangles;
    triangles.reserve(static_cast<std::size_t>(2 * rows * around));
    for (long r = 0; r < rows; ++r) {
        const bool upper_ahead = (r % 2 == 0);
        for (long i = 0; i < around; ++i) {
            if (upper_ahead) {
                // upper node i sits between lower nodes i and i + 1
                triangles.push_back({id(r, i), id(r, i + 1), id(r + 1, i)});
                triangles.push_back({id(r, i + 1), id(r + 1, i + 1), id(r + 1, i)});
            } else {
                // upper node i + 1 sits between lower nodes i and i + 1
                triangles.push_back({id(r, i), id(r, i + 1), id(r + 1, i + 1)});
                triangles.push_back({id(r, i), id(r + 1, i + 1), id(r + 1, i)});
            }
        }
    }
    return SurfaceMesh::build(positions, triangles, DimensionMode::surface3d);
}

SurfaceMesh capsule(double radius, double length, double edge_length, std::uint64_t seed) {
    require_positive(radius, "radius");
    require_positive(length, "length");
    require_positive(edge_length, "edge length");
    // dense latitude-longitude reference surface, then isotropic remeshing
    const double fine = 0.35 * edge_length;
    const auto around = std::max<long>(8, std::lround(2.0 * std::numbers::pi * radius / fine));
    const auto cap_rings = std::max<long>(3, std::lround(0.5 * std::numbers::pi * radius / fine));
    const auto tube_rings = std::max<long>(1, std::lround(length / fine));

    // profile from the south pole to the north pole, poles excluded
    std::vector<std::pair<double, double>> profile; // (r, z)
    for (long k = 1; k <= cap_rings; ++k) {
        const double phi = -0.5 * std::numbers::pi +
                           0.5 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(cap_rings);
        profile.emplace_back(radius * std::cos(phi), radius * std::sin(phi));
    }
    for (long k = 1; k < tube_rings; ++k) {
        profile.emplace_back(radius, length * static_cast<double>(k) / static_cast<double>(tube_rings));
    }
    for (long k = 0; k < cap_rings; ++k) {
        const double phi = 0.5 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(cap_rings);
        profile.emplace_back(radius * std::cos(phi), length + radius * std::sin(phi));
    }

    std::vector<Vec3> positions;
    positions.emplace_back(0.0, 0.0, -radius);
    for (std::size_t k = 0; k < profile.size(); ++k) {
        const double twist = (k % 2 == 0) ? 0.0 : 0.5;
        for (long i = 0; i < around; ++i) {
            const double theta = 2.0 * std::numbers::pi * (static_cast<double>(i) + twist) /
                                 static_cast<double>(around);
            positions.emplace_back(profile[k].first * std::cos(theta),
                                   profile[k].first * std::sin(theta), profile[k].second);
        }
    }
    const NodeIndex north = positions.size();
    positions.emplace_back(0.0, 0.0, length + radius);

    auto id = [&](std::size_t ring, long i) {
        return static_cast<NodeIndex>(1 + ring * static_cast<std::size_t>(around) +
                                      static_cast<std::size_t>(((i % around) + around) % around));
    };
    std::vector<Triangle> triangles;
    for (long i = 0; i < around; ++i) {
        triangles.push_back({0, id(0, i + 1), id(0, i)});
    }
    for (std::size_t k = 0; k + 1 < profile.size(); ++k) {
        const bool upper_ahead = (k % 2 == 0);
        for (long i = 0; i < around; ++i) {
            if (upper_ahead) {
                triangles.push_back({id(k, i), id(k, i + 1), id(k + 1, i)});
                triangles.push_back({id(k, i + 1), id(k + 1, i + 1), id(k + 1, i)});
            } else {
                triangles.push_back({id(k, i), id(k, i + 1), id(k + 1, i + 1)});
                triangles.push_back({id(k, i), id(k + 1, i + 1), id(k + 1, i)});
            }
        }
    }
    const std::size_t last = profile.size() - 1;
    for (long i = 0; i < around; ++i) {
        triangles.push_back({north, id(last, i), id(last, i + 1)});
    }
    const SurfaceMesh reference = SurfaceMesh::build(positions, triangles, DimensionMode::surface3d);

    RemeshConfig config;
    config.target_edge_length = edge_length;
    config.seed = seed;
    return remesh_surface(reference, config).mesh;
}

SurfaceMesh sphere(double radius, int subdivisions) {
    require_positive(radius, "radius");
    if (subdivisions < 0 || subdivisions > 8) {
        throw ArgumentError("sphere subdivisions must lie in [0, 8]");
    }
    std::vector<Vec3> positions{{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
    std::vector<Triangle> triangles{{0, 2, 4}, {2, 1, 4}, {1, 3, 4}, {3, 0, 4},
                                    {2, 0, 5}, {1, 2, 5}, {3, 1, 5}, {0, 3, 5}};
    for (int s = 0; s < subdivisions; ++s) {
        std::map<std::pair<NodeIndex, NodeIndex>, NodeIndex> midpoints;
        auto midpoint = [&](NodeIndex a, NodeIndex b) {
            const auto key = std::minmax(a, b);
            auto it = midpoints.find(key);
            if (it != midpoints.end()) {
                return it->second;
            }
            positions.push_back((positions[a] + positions[b]).normalized());
            midpoints.emplace(key, positions.size() - 1);
            return positions.size() - 1;
        };
        std::vector<Triangle> next;
        next.reserve(4 * triangles.size());
        for (const auto& t : triangles) {
            const NodeIndex ab = midpoint(t[0], t[1]);
            const NodeIndex bc = midpoint(t[1], t[2]);
            const NodeIndex ca = midpoint(t[2], t[0]);
            next.push_back({t[0], ab, ca});
            next.push_back({ab, t[1], bc});
            next.push_back({ca, bc, t[2]});
            next.push_back({ab, bc, ca});
        }
        triangles = std::move(next);
    }
    for (Vec3& p : positions) {
        p = radius * p.normalized();
    }
    return SurfaceMesh::build(positions, triangles, DimensionMode::surface3d);
}

} // namespace hdremesh::shapes
