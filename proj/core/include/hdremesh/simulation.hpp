#ifndef HDREMESH_SIMULATION_HPP
#define HDREMESH_SIMULATION_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hdremesh/config.hpp"
#include "hdremesh/mesh.hpp"
#include "hdremesh/skalak.hpp"

namespace hdremesh {

// Closed capsule inflated by a constant internal pressure, relaxed with
// overdamped dynamics. One run keeps its mesh, the other remeshes at a fixed
// interval and carries the initial configuration over.
struct SimulationConfig {
    double radius = 1.0;
    double length = 4.0;
    double edge_length = 0.3;
    SkalakParams params{0.01, 0.05};
    double pressure = 0.01;
    double mobility = 1000.0;
    double dt = 0.0025;
    double t_end = 30.0;
    double remesh_interval = 0.6;
    std::size_t remesh_iterations = 5;
    double sample_interval = 0.1;
    std::uint64_t seed = 1;

    void validate() const;
    static SimulationConfig from(const Config& config);
};

struct SimulationRow {
    double time = 0.0;
    double total_area = 0.0;
    double median_ar = 0.0;
    double q1_ar = 0.0;
    double q3_ar = 0.0;
    std::size_t n_elements = 0;
};

struct SimulationRun {
    std::string name;
    std::vector<SimulationRow> rows;
    std::size_t remesh_count = 0;
    std::optional<double> diverged_at;
    std::string divergence;
    SurfaceMesh final_mesh;
};

struct SimulationResult {
    std::vector<SimulationRun> runs;

    const SimulationRun& get(const std::string& name) const;
};

SimulationRun run_membrane(const SurfaceMesh& initial, const SimulationConfig& config, bool remesh,
                           const std::string& name);

// Runs "fixed" and "remeshed" from the same starting capsule.
SimulationResult run_pressure_simulation(const SimulationConfig& config);

// |A(t_last) - A(t_last - window)| / (A(t_last) * window), per unit time.
double relative_area_rate(const SimulationRun& run, double window);

inline constexpr const char* kTimeseriesHeader =
    "run,time,total_area,median_ar,q1_ar,q3_ar,n_elements";

void write_timeseries(std::ostream& out, const SimulationResult& result);
std::vector<std::filesystem::path> write_simulation(const SimulationResult& result,
                                                    const std::filesystem::path& dir);

} // namespace hdremesh

#endif
