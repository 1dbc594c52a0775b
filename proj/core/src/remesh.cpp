#include "hdremesh/remesh.hpp"

#include <cmath>

#include "hdremesh/errors.hpp"

namespace hdremesh {

void RemeshConfig::validate() const {
    if (!(target_edge_length > 0.0) || !std::isfinite(target_edge_length)) {
        throw ArgumentError("target edge length must be positive and finite");
    }
    if (trigger == RemeshTrigger::interval && !(interval > 0.0)) {
        throw ArgumentError("remesh interval must be positive");
    }
    if (trigger == RemeshTrigger::aspect_ratio &&
        !(aspect_ratio_threshold > 0.0 && aspect_ratio_threshold <= 1.0)) {
        throw ArgumentError("aspect-ratio threshold must lie in (0, 1]");
    }
}

RemeshResult remesh(const SurfaceMesh& old_mesh, const RemeshConfig& config) {
    return old_mesh.mode() == DimensionMode::planar2d ? remesh_planar(old_mesh, config)
                                                      : remesh_surface(old_mesh, config);
}

bool should_remesh(const SurfaceMesh& mesh, const RemeshConfig& config, double time,
                   double last_remesh_time) {
    switch (config.trigger) {
    case RemeshTrigger::interval:
        return time - last_remesh_time >= config.interval - 1e-9;
    case RemeshTrigger::aspect_ratio:
        return mesh_quality_summary(mesh, Configuration::current).median <
               config.aspect_ratio_threshold;
    }
    return false;
}

} // namespace hdremesh
