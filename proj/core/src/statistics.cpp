#include "hdremesh/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "hdremesh/errors.hpp"

namespace hdremesh {

double quantile_sorted(std::span<const double> sorted, double p) {
    if (sorted.empty()) {
        throw ArgumentError("quantile of an empty sample");
    }
    const double rank = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(rank));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = rank - static_cast<double>(lo);
    if (frac == 0.0) {
        return sorted[lo];
    }
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

QuantileSummary summarize(std::span<const double> values) {
    if (values.empty()) {
        throw ArgumentError("summary of an empty sample");
    }
    std::vector<double> sorted(values.begin(), values.end());
    for (double v : sorted) {
        if (!std::isfinite(v)) {
            throw ArgumentError("summary of a sample containing non-finite values");
        }
    }
    std::sort(sorted.begin(), sorted.end());

    QuantileSummary s;
    s.count = sorted.size();
    s.min = sorted.front();
    s.max = sorted.back();
    s.q1 = quantile_sorted(sorted, 0.25);
    s.q3 = quantile_sorted(sorted, 0.75);
    // exact mean of the two central values for even counts
    const std::size_t n = sorted.size();
    s.median = n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
    return s;
}

double median(std::span<const double> values) { return summarize(values).median; }

} // namespace hdremesh
