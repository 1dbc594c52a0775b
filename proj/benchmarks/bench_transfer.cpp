#include <benchmark/benchmark.h>

#include "hdremesh/deformation.hpp"
#include "hdremesh/shapes.hpp"
#include "hdremesh/transfer.hpp"

using namespace hdremesh;

namespace {

SurfaceMesh deformed_square(double h) {
    SurfaceMesh m = shapes::square(3.0, h, 1);
    auto pts = m.positions(Configuration::initial);
    for (auto& p : pts) {
        p = AnalyticDeformation::square_quadratic().evaluate(p);
    }
    m.set_positions(Configuration::current, pts);
    return m;
}

// old mesh edge 0.1 on [0,3]^2 mapped to [0,9]^2; new mesh edge 1/range
void BM_TransferSquare(benchmark::State& state) {
    const SurfaceMesh old_mesh = deformed_square(0.1);
    const SurfaceMesh new_mesh = shapes::square(9.0, 1.0 / static_cast<double>(state.range(0)), 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(transfer_initial_configuration(old_mesh, new_mesh));
    }
    state.counters["new_nodes"] = static_cast<double>(new_mesh.node_count());
}
BENCHMARK(BM_TransferSquare)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_MapToInitial(benchmark::State& state) {
    const SurfaceMesh m = deformed_square(0.1);
    const ElementLocator loc(m);
    const Vec3 p(2.5, 4.0, 0.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(map_to_initial(loc, p));
    }
}
BENCHMARK(BM_MapToInitial);

} // namespace
