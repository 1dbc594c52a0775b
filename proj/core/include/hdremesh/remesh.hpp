#ifndef HDREMESH_REMESH_HPP
#define HDREMESH_REMESH_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hdremesh/delaunay.hpp"
#include "hdremesh/mesh.hpp"

namespace hdremesh {

enum class RemeshTrigger { interval, aspect_ratio };

struct RemeshConfig {
    double target_edge_length = 0.1;
    std::size_t iterations = 10; // surface passes
    std::uint64_t seed = 0;
    RemeshTrigger trigger = RemeshTrigger::interval;
    double interval = 0.6;                 // seconds
    double aspect_ratio_threshold = 0.6; // median AR below this triggers

    void validate() const;
};

// Both configurations of `mesh` equal the generated positions; the initial one
// is meant to be overwritten by transfer_initial_configuration.
struct RemeshResult {
    SurfaceMesh mesh;
    std::vector<std::string> warnings;
    double achieved_median_edge_length = 0.0;
};

// Retriangulates the current configuration of a planar mesh bounded by a single
// simple loop. Boundary vertices are placed on the old boundary polyline.
RemeshResult remesh_planar(const SurfaceMesh& old_mesh, const RemeshConfig& config);

// Isotropic split / collapse / flip / smooth iterations on the current
// configuration, with vertices projected back onto the old surface and
// boundary vertices onto the old boundary loops.
RemeshResult remesh_surface(const SurfaceMesh& old_mesh, const RemeshConfig& config);

// Dispatches on the mesh mode.
RemeshResult remesh(const SurfaceMesh& old_mesh, const RemeshConfig& config);

// Interval trigger: time - last_remesh_time >= interval (with 1e-9 slack).
// Aspect-ratio trigger: median AR of the current configuration < threshold.
bool should_remesh(const SurfaceMesh& mesh, const RemeshConfig& config, double time,
                   double last_remesh_time);

namespace planar {

struct PlanarMesh {
    std::vector<Vec2> points;
    std::vector<Tri2> triangles;
    std::vector<std::string> warnings;
};

// Boundary resampled at the target length between feature corners, interior
// filled from a hexagonal lattice with a seeded offset, then Delaunay
// triangulated and smoothed. Throws GeometryError for self-intersecting or
// zero-area loops.
PlanarMesh generate_planar_mesh(std::span<const Vec2> boundary, double target_edge_length,
                                std::uint64_t seed);

} // namespace planar

} // namespace hdremesh

#endif
