#include "hdremesh/errors.hpp"

namespace hdremesh {

std::string_view to_string(ErrorCategory category) {
    switch (category) {
    case ErrorCategory::invalid_argument: return "invalid_argument";
    case ErrorCategory::degeneracy: return "degeneracy";
    case ErrorCategory::topology: return "topology";
    case ErrorCategory::geometry: return "geometry";
    case ErrorCategory::search: return "search";
    case ErrorCategory::transfer: return "transfer";
    case ErrorCategory::diverged: return "diverged";
    case ErrorCategory::io: return "io";
    case ErrorCategory::config: return "config";
    }
    return "unknown";
}

} // namespace hdremesh
