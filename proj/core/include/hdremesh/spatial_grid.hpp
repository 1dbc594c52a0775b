#ifndef HDREMESH_SPATIAL_GRID_HPP
#define HDREMESH_SPATIAL_GRID_HPP

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "hdremesh/geometry.hpp"
#include "hdremesh/types.hpp"

namespace hdremesh {

// Uniform bucket grid over item bounding boxes. Each item is registered in
// every cell its box overlaps. `nearest` visits cells in growing Chebyshev
// shells and stops once no unvisited item can beat the incumbent, so it returns
// exactly what an exhaustive lexicographic (distance, id) scan would.
class SpatialGrid {
public:
    SpatialGrid() = default;
    SpatialGrid(std::span<const geometry::Aabb> boxes, double cell_size);

    struct Hit {
        std::size_t item = invalid_index;
        double distance_squared = std::numeric_limits<double>::infinity();
    };

    template <class DistanceSquared>
    Hit nearest(const Vec3& p, DistanceSquared&& distance_squared) const;

    std::size_t item_count() const noexcept { return item_count_; }
    double cell_size() const noexcept { return cell_size_; }
    std::array<long, 3> dims() const noexcept { return dims_; }

private:
    long cell_coord(double x, int axis) const;
    std::size_t flat(long i, long j, long k) const {
        return static_cast<std::size_t>((k * dims_[1] + j) * dims_[0] + i);
    }
    // Lower bound on the distance from p to anything outside shells 0..r.
    // Returns +inf once the shell block covers the whole grid.
    double outside_bound(const Vec3& p, const std::array<long, 3>& c, long r) const;

    Vec3 origin_ = Vec3::Zero();
    double cell_size_ = 1.0;
    std::array<long, 3> dims_{1, 1, 1};
    std::vector<std::size_t> cell_start_;
    std::vector<std::size_t> cell_items_;
    std::size_t item_count_ = 0;
};

template <class DistanceSquared>
SpatialGrid::Hit SpatialGrid::nearest(const Vec3& p, DistanceSquared&& distance_squared) const {
    Hit best;
    if (item_count_ == 0) {
        return best;
    }
    const std::array<long, 3> c{cell_coord(p.x(), 0), cell_coord(p.y(), 1), cell_coord(p.z(), 2)};
    const long max_r = std::max({dims_[0], dims_[1], dims_[2]});
    for (long r = 0; r <= max_r; ++r) {
        const long i0 = std::max(0L, c[0] - r), i1 = std::min(dims_[0] - 1, c[0] + r);
        const long j0 = std::max(0L, c[1] - r), j1 = std::min(dims_[1] - 1, c[1] + r);
        const long k0 = std::max(0L, c[2] - r), k1 = std::min(dims_[2] - 1, c[2] + r);
        for (long k = k0; k <= k1; ++k) {
            for (long j = j0; j <= j1; ++j) {
                for (long i = i0; i <= i1; ++i) {
                    const long cheb = std::max({std::abs(i - c[0]), std::abs(j - c[1]),
                                                std::abs(k - c[2])});
                    if (cheb != r) {
                        continue;
                    }
                    const std::size_t cell = flat(i, j, k);
                    for (std::size_t s = cell_start_[cell]; s < cell_start_[cell + 1]; ++s) {
                        const std::size_t item = cell_items_[s];
                        const double d2 = distance_squared(item);
                        if (d2 < best.distance_squared ||
                            (d2 == best.distance_squared && item < best.item)) {
                            best = {item, d2};
                        }
                    }
                }
            }
        }
        const double bound = outside_bound(p, c, r);
        if (std::isinf(bound)) {
            break;
        }
        // margin absorbs rounding differences between the bound and d2
        if (bound * bound > best.distance_squared * (1.0 + 1e-9) + 1e-300) {
            break;
        }
    }
    return best;
}

} // namespace hdremesh

#endif
