#include "hdremesh/spatial_grid.hpp"

#include <algorithm>

#include "hdremesh/errors.hpp"

namespace hdremesh {

namespace {
// Grids never exceed this many cells per item (plus a constant).
constexpr double kMaxCellsPerItem = 8.0;
} // namespace

SpatialGrid::SpatialGrid(std::span<const geometry::Aabb> boxes, double cell_size) {
    item_count_ = boxes.size();
    if (boxes.empty()) {
        cell_start_.assign(2, 0);
        return;
    }
    if (!(cell_size > 0.0) || !std::isfinite(cell_size)) {
        throw ArgumentError("spatial grid cell size must be positive");
    }
    geometry::Aabb all;
    for (const auto& b : boxes) {
        all.expand(b);
    }
    const Vec3 extent = all.hi - all.lo;
    const double budget = kMaxCellsPerItem * static_cast<double>(boxes.size()) + 64.0;
    for (;;) {
        double cells = 1.0;
        for (int a = 0; a < 3; ++a) {
            cells *= std::floor(extent[a] / cell_size) + 1.0;
        }
        if (cells <= budget) {
            break;
        }
        cell_size *= 1.25;
    }
    cell_size_ = cell_size;
    origin_ = all.lo;
    for (int a = 0; a < 3; ++a) {
        dims_[a] = static_cast<long>(std::floor(extent[a] / cell_size_)) + 1;
    }

    const std::size_t ncells = static_cast<std::size_t>(dims_[0] * dims_[1] * dims_[2]);
    std::vector<std::size_t> counts(ncells + 1, 0);
    auto for_each_cell = [&](const geometry::Aabb& b, auto&& fn) {
        const long i0 = cell_coord(b.lo.x(), 0), i1 = cell_coord(b.hi.x(), 0);
        const long j0 = cell_coord(b.lo.y(), 1), j1 = cell_coord(b.hi.y(), 1);
        const long k0 = cell_coord(b.lo.z(), 2), k1 = cell_coord(b.hi.z(), 2);
        for (long k = k0; k <= k1; ++k) {
            for (long j = j0; j <= j1; ++j) {
                for (long i = i0; i <= i1; ++i) {
                    fn(flat(i, j, k));
                }
            }
        }
    };
    for (const auto& b : boxes) {
        for_each_cell(b, [&](std::size_t cell) { ++counts[cell + 1]; });
    }
    for (std::size_t c = 0; c < ncells; ++c) {
        counts[c + 1] += counts[c];
    }
    cell_start_ = counts;
    cell_items_.resize(cell_start_.back());
    std::vector<std::size_t> fill(cell_start_.begin(), cell_start_.end() - 1);
    for (std::size_t item = 0; item < boxes.size(); ++item) {
        for_each_cell(boxes[item], [&](std::size_t cell) { cell_items_[fill[cell]++] = item; });
    }
}

long SpatialGrid::cell_coord(double x, int axis) const {
    const double f = std::floor((x - origin_[axis]) / cell_size_);
    if (!(f > 0.0)) {
        return 0;
    }
    return std::min(dims_[axis] - 1, static_cast<long>(std::min(f, 1e15)));
}

double SpatialGrid::outside_bound(const Vec3& p, const std::array<long, 3>& c, long r) const {
    double bound = std::numeric_limits<double>::infinity();
    for (int a = 0; a < 3; ++a) {
        if (c[a] - r > 0) {
            const double face = origin_[a] + static_cast<double>(c[a] - r) * cell_size_;
            bound = std::min(bound, std::max(0.0, p[a] - face));
        }
        if (c[a] + r < dims_[a] - 1) {
            const double face = origin_[a] + static_cast<double>(c[a] + r + 1) * cell_size_;
            bound = std::min(bound, std::max(0.0, face - p[a]));
        }
    }
    return bound;
}

} // namespace hdremesh
