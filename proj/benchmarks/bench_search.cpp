#include <cmath>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "hdremesh/search.hpp"
#include "hdremesh/shapes.hpp"

using namespace hdremesh;

namespace {

std::vector<Vec3> cylinder_queries(std::size_t n) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> angle(0.0, 6.283185307179586), axial(0.0, 6.0);
    std::vector<Vec3> out;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = angle(rng);
        out.emplace_back(std::cos(t), std::sin(t), axial(rng));
    }
    return out;
}

void BM_LocatorBuild(benchmark::State& state) {
    const SurfaceMesh m = shapes::cylinder(1.0, 6.0, 1.0 / static_cast<double>(state.range(0)), 1);
    for (auto _ : state) {
        ElementLocator loc(m);
        benchmark::DoNotOptimize(&loc);
    }
    state.counters["elements"] = static_cast<double>(m.element_count());
}
BENCHMARK(BM_LocatorBuild)->Arg(5)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_FindNearestGrid(benchmark::State& state) {
    const SurfaceMesh m = shapes::cylinder(1.0, 6.0, 1.0 / static_cast<double>(state.range(0)), 1);
    const ElementLocator loc(m);
    const auto queries = cylinder_queries(1000);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(loc.find_nearest_element(queries[i++ % queries.size()]));
    }
    state.counters["elements"] = static_cast<double>(m.element_count());
}
BENCHMARK(BM_FindNearestGrid)->Arg(5)->Arg(10)->Arg(20);

void BM_NearestCentroidExhaustive(benchmark::State& state) {
    const SurfaceMesh m = shapes::cylinder(1.0, 6.0, 1.0 / static_cast<double>(state.range(0)), 1);
    const auto queries = cylinder_queries(1000);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(nearest_centroid_element_exhaustive(m, queries[i++ % queries.size()]));
    }
    state.counters["elements"] = static_cast<double>(m.element_count());
}
BENCHMARK(BM_NearestCentroidExhaustive)->Arg(5)->Arg(10)->Arg(20);

} // namespace
