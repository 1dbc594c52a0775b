#ifndef HDREMESH_STATISTICS_HPP
#define HDREMESH_STATISTICS_HPP

#include <cstddef>
#include <span>

namespace hdremesh {

// Order statistics of a sample. Quartiles use linear interpolation between
// order statistics at rank (n - 1) p, so the median of an even-sized sample is
// the mean of the two central values.
struct QuantileSummary {
    double median = 0.0;
    double q1 = 0.0;
    double q3 = 0.0;
    double min = 0.0;
    double max = 0.0;
    std::size_t count = 0;

    double iqr() const noexcept { return q3 - q1; }
};

// `sorted` must be ascending and nonempty; p in [0, 1].
double quantile_sorted(std::span<const double> sorted, double p);

// Throws ArgumentError on an empty sample or non-finite values.
QuantileSummary summarize(std::span<const double> values);

double median(std::span<const double> values);

} // namespace hdremesh

#endif
