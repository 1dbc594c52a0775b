#include <benchmark/benchmark.h>

#include "hdremesh/deformation.hpp"
#include "hdremesh/remesh.hpp"
#include "hdremesh/shapes.hpp"

using namespace hdremesh;

namespace {

void BM_RemeshPlanar(benchmark::State& state) {
    SurfaceMesh m = shapes::square(3.0, 0.2, 1);
    auto pts = m.positions(Configuration::initial);
    for (auto& p : pts) {
        p = AnalyticDeformation::square_quadratic().evaluate(p);
    }
    m.set_positions(Configuration::current, pts);
    RemeshConfig c;
    c.target_edge_length = 1.0 / static_cast<double>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(remesh_planar(m, c));
    }
}
BENCHMARK(BM_RemeshPlanar)->Arg(5)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_RemeshSurfaceCylinder(benchmark::State& state) {
    const SurfaceMesh m = shapes::cylinder(1.0, 6.0, 0.3, 1);
    RemeshConfig c;
    c.target_edge_length = 1.0 / static_cast<double>(state.range(0));
    c.iterations = 5;
    for (auto _ : state) {
        benchmark::DoNotOptimize(remesh_surface(m, c));
    }
}
BENCHMARK(BM_RemeshSurfaceCylinder)->Arg(5)->Arg(10)->Unit(benchmark::kMillisecond);

} // namespace
