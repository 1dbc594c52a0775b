#ifndef HDREMESH_EXPERIMENTS_HPP
#define HDREMESH_EXPERIMENTS_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hdremesh/config.hpp"
#include "hdremesh/deformation.hpp"
#include "hdremesh/mesh.hpp"
#include "hdremesh/skalak.hpp"
#include "hdremesh/statistics.hpp"

namespace hdremesh {

struct ErrorSample {
    std::size_t id = 0;
    double value = 0.0;
};

// Per node: |current - d(initial)|^2. For time-dependent deformations `time`
// defaults to t_end.
std::vector<ErrorSample> spatial_error(const SurfaceMesh& mesh,
                                       const AnalyticDeformation& deformation,
                                       std::optional<double> time = std::nullopt);

struct StrainErrorSamples {
    std::vector<ErrorSample> samples;
    std::size_t excluded = 0; // singular analytic Jacobian at the centroid
};

// Per element: |psi(analytic Jacobian at the initial centroid) - psi(discrete)|.
StrainErrorSamples strain_error(const SurfaceMesh& mesh, const SkalakParams& params,
                                const AnalyticDeformation& deformation,
                                std::optional<double> time = std::nullopt);

std::vector<double> sample_values(const std::vector<ErrorSample>& samples);

// One sweep level. `stats` is empty when the level produced no samples by
// definition or aborted (then `error` holds the reason).
struct LevelResult {
    double level = 0.0;
    std::optional<QuantileSummary> stats;
    double achieved_edge_length = 0.0;
    std::uint64_t seed = 0;
    std::size_t old_nodes = 0;
    std::size_t old_elements = 0;
    std::size_t new_nodes = 0;
    std::size_t new_elements = 0;
    std::size_t excluded = 0;
    std::string error;
};

struct ExperimentSeries {
    std::string name;
    std::string sweep_variable;
    std::vector<LevelResult> levels;
};

struct ExperimentResult {
    std::string experiment;
    std::vector<ExperimentSeries> series;

    const ExperimentSeries& get(const std::string& name) const;
};

inline constexpr const char* kResultsHeader =
    "level,median,q1,q3,min,max,n_samples,achieved_edge_length,seed";

void write_results(std::ostream& out, const ExperimentSeries& series);
void write_results(const ExperimentSeries& series, const std::filesystem::path& path);

// Writes <prefix>_<series>.csv for each series and <prefix>.meta.json; returns
// the files written.
std::vector<std::filesystem::path> write_experiment(const ExperimentResult& result,
                                                    const std::filesystem::path& dir);

// "mesh,element,aspect_ratio" rows.
struct AspectRatioTable {
    std::vector<std::pair<std::string, std::vector<double>>> meshes;
};
void write_aspect_ratios(const AspectRatioTable& table, const std::filesystem::path& path);

// Square [0, side]^2 under (x, y) -> (x^2, y^2), remeshed once.
struct SquareExperimentConfig {
    double side = 3.0;
    std::vector<double> old_edges{0.5, 0.4, 0.3, 0.2, 0.1};
    double fixed_new_edge = 0.1;
    std::vector<double> new_edges{0.5, 0.4, 0.3, 0.2, 0.1};
    double fixed_old_edge = 0.1;
    std::uint64_t seed = 1;
    bool identity = false;

    static SquareExperimentConfig from(const Config& config);
};

// Cylinder of radius 1 and height 2 pi under the sinusoidal map.
struct CylinderExperimentConfig {
    std::vector<double> old_edges{0.4, 0.2, 0.1, 0.05};
    double fixed_new_edge = 0.1;
    std::vector<double> new_edges{0.4, 0.2, 0.1, 0.05};
    double fixed_old_edge = 0.1;
    std::size_t iterations = 10;
    std::uint64_t seed = 1;
    bool identity = false;

    static CylinderExperimentConfig from(const Config& config);
};

struct StrainExperimentConfig {
    double side = 3.0;
    std::vector<double> edges{0.5, 0.25, 0.1, 0.05};
    // new-mesh sweeps behind a fixed coarse and fine old mesh
    std::vector<double> new_edges{0.5, 0.25, 0.1, 0.05};
    double coarse_old_edge = 0.26;
    double fine_old_edge = 0.06;
    SkalakParams params;
    std::uint64_t seed = 1;

    static StrainExperimentConfig from(const Config& config);
};

struct FrequencyExperimentConfig {
    double side = 3.0;
    double initial_edge = 0.1;
    double remesh_edge = 0.1;
    double t_end = 60.0;
    std::vector<long> frequencies{0, 1, 2, 3, 5, 10, 20};
    SkalakParams params;
    std::uint64_t seed = 1;

    static FrequencyExperimentConfig from(const Config& config);
};

// Single pipeline run: old mesh at `old_edge`, deformed, remeshed at
// `new_edge`, transferred. Exposed for tests and benchmarks.
struct SquarePipeline {
    SurfaceMesh old_mesh; // deformed, initial = undeformed
    SurfaceMesh new_mesh; // transferred
    std::vector<ErrorSample> spatial;
};
SquarePipeline run_square_pipeline(double side, double old_edge, double new_edge,
                                   const AnalyticDeformation& deformation, std::uint64_t seed);

struct CylinderPipeline {
    SurfaceMesh old_mesh;
    SurfaceMesh new_mesh;
    std::vector<ErrorSample> spatial;
};
CylinderPipeline run_cylinder_pipeline(double old_edge, double new_edge,
                                       const AnalyticDeformation& deformation,
                                       std::size_t iterations, std::uint64_t seed);

ExperimentResult run_square_spatial_experiment(const SquareExperimentConfig& config);
ExperimentResult run_cylinder_spatial_experiment(const CylinderExperimentConfig& config);
ExperimentResult run_strain_experiment(const StrainExperimentConfig& config);
ExperimentResult run_frequency_experiment(const FrequencyExperimentConfig& config);

// Undeformed, deformed, remeshed-mapped-to-initial and remeshed square meshes.
AspectRatioTable square_aspect_ratio_table(double side, double old_edge, double new_edge,
                                           std::uint64_t seed);

} // namespace hdremesh

#endif
