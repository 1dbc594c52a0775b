#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "hdremesh/errors.hpp"
#include "hdremesh/statistics.hpp"
#include "oracles.hpp"

using namespace hdremesh;

TEST(Statistics, MatchesSortOracleOnIntegerVectors) {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> value(-50, 50);
    std::uniform_int_distribution<int> size(1, 40);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<double> v(static_cast<std::size_t>(size(rng)));
        for (double& x : v) {
            x = value(rng);
        }
        const QuantileSummary q = summarize(v);
        EXPECT_EQ(q.median, oracle::sort_median(v));
        EXPECT_EQ(q.q1, oracle::sort_quantile(v, 0.25));
        EXPECT_EQ(q.q3, oracle::sort_quantile(v, 0.75));
        EXPECT_EQ(q.min, *std::min_element(v.begin(), v.end()));
        EXPECT_EQ(q.max, *std::max_element(v.begin(), v.end()));
        EXPECT_EQ(q.count, v.size());
    }
}

TEST(Statistics, EvenMedianIsMeanOfCentralPair) {
    const std::vector<double> v{0.8, 0.4};
    EXPECT_DOUBLE_EQ(median(v), 0.6);
}

TEST(Statistics, Quartiles) {
    const std::vector<double> v{1, 2, 3, 4, 5};
    const QuantileSummary q = summarize(v);
    EXPECT_EQ(q.q1, 2.0);
    EXPECT_EQ(q.q3, 4.0);
    EXPECT_EQ(q.iqr(), 2.0);
}

TEST(Statistics, RejectsEmptyAndNonFinite) {
    EXPECT_THROW(summarize(std::vector<double>{}), ArgumentError);
    EXPECT_THROW(summarize(std::vector<double>{1.0, std::numeric_limits<double>::infinity()}),
                 ArgumentError);
    EXPECT_THROW(summarize(std::vector<double>{std::nan("")}), ArgumentError);
}
