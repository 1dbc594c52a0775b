#include "hdremesh/experiments.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>

#include "json.hpp"

#include "hdremesh/csv.hpp"
#include "hdremesh/errors.hpp"
#include "hdremesh/remesh.hpp"
#include "hdremesh/shapes.hpp"
#include "hdremesh/transfer.hpp"

namespace hdremesh {

namespace {

constexpr double kCylinderRadius = 1.0;
constexpr double kCylinderHeight = 2.0 * std::numbers::pi;

double resolve_time(const AnalyticDeformation& d, std::optional<double> time) {
    if (time) {
        return *time;
    }
    return d.is_time_dependent() ? d.t_end : 0.0;
}

SurfaceMesh deform(const SurfaceMesh& mesh, const AnalyticDeformation& d, double time) {
    const auto initial = mesh.positions(Configuration::initial);
    std::vector<Vec3> current;
    current.reserve(initial.size());
    for (const Vec3& x : initial) {
        current.push_back(d.evaluate(x, time));
    }
    return SurfaceMesh::build_with_history(initial, current, mesh.triangles(), mesh.mode());
}

std::optional<QuantileSummary> summarize_samples(const std::vector<ErrorSample>& samples) {
    if (samples.empty()) {
        return std::nullopt;
    }
    const auto values = sample_values(samples);
    return summarize(values);
}

void fill_sizes(LevelResult& level, const SurfaceMesh& old_mesh, const SurfaceMesh& new_mesh) {
    level.old_nodes = old_mesh.node_count();
    level.old_elements = old_mesh.element_count();
    level.new_nodes = new_mesh.node_count();
    level.new_elements = new_mesh.element_count();
}

// Runs `body` for one level and records any library error instead of aborting
// the whole sweep.
template <class Body>
LevelResult run_level(double level, std::uint64_t seed, Body&& body) {
    LevelResult result;
    result.level = level;
    result.seed = seed;
    try {
        body(result);
    } catch (const Error& err) {
        result.stats.reset();
        result.error = std::string(to_string(err.category())) + ": " + err.what();
    }
    return result;
}

std::string optional_number(const std::optional<QuantileSummary>& s, double QuantileSummary::*field) {
    return s ? format_number((*s).*field) : std::string();
}

SkalakParams params_from(const Config& config) {
    SkalakParams params;
    params.kappa_s = config.get_double("kappa_s", params.kappa_s);
    params.kappa_alpha = config.get_double("kappa_alpha", params.kappa_alpha);
    params.validate();
    return params;
}

void require_positive_list(const std::vector<double>& values, const char* key) {
    if (values.empty()) {
        throw ConfigError(std::string("key '") + key + "' needs at least one value");
    }
    for (double v : values) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw ConfigError(std::string("key '") + key + "' must hold positive lengths");
        }
    }
}

} // namespace

std::vector<ErrorSample> spatial_error(const SurfaceMesh& mesh,
                                       const AnalyticDeformation& deformation,
                                       std::optional<double> time) {
    const double t = resolve_time(deformation, time);
    std::vector<ErrorSample> samples;
    samples.reserve(mesh.node_count());
    for (NodeIndex n = 0; n < mesh.node_count(); ++n) {
        const Vec3 expected = deformation.evaluate(mesh.position(n, Configuration::initial), t);
        samples.push_back({n, (mesh.position(n, Configuration::current) - expected).squaredNorm()});
    }
    return samples;
}

StrainErrorSamples strain_error(const SurfaceMesh& mesh, const SkalakParams& params,
                                const AnalyticDeformation& deformation,
                                std::optional<double> time) {
    const double t = resolve_time(deformation, time);
    StrainErrorSamples out;
    out.samples.reserve(mesh.element_count());
    for (ElementIndex e = 0; e < mesh.element_count(); ++e) {
        const auto exact =
            exact_invariants_analytic(deformation, centroid(mesh, e, Configuration::initial), t);
        if (!exact) {
            ++out.excluded;
            continue;
        }
        const double psi_exact = skalak_energy_density(*exact, params);
        const double psi_discrete = element_energy_density(mesh, e, params);
        out.samples.push_back({e, std::abs(psi_exact - psi_discrete)});
    }
    return out;
}

std::vector<double> sample_values(const std::vector<ErrorSample>& samples) {
    std::vector<double> values;
    values.reserve(samples.size());
    for (const auto& s : samples) {
        values.push_back(s.value);
    }
    return values;
}

const ExperimentSeries& ExperimentResult::get(const std::string& name) const {
    for (const auto& s : series) {
        if (s.name == name) {
            return s;
        }
    }
    throw ArgumentError("experiment " + experiment + " has no series " + name);
}

void write_results(std::ostream& out, const ExperimentSeries& series) {
    out << kResultsHeader << '\n';
    for (const LevelResult& level : series.levels) {
        const auto& s = level.stats;
        out << format_number(level.level) << ',' << optional_number(s, &QuantileSummary::median)
            << ',' << optional_number(s, &QuantileSummary::q1) << ','
            << optional_number(s, &QuantileSummary::q3) << ','
            << optional_number(s, &QuantileSummary::min) << ','
            << optional_number(s, &QuantileSummary::max) << ',' << (s ? s->count : 0) << ','
            << format_number(level.achieved_edge_length) << ',' << level.seed << '\n';
    }
}

void write_results(const ExperimentSeries& series, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot write results", path.string());
    }
    write_results(out, series);
    if (!out) {
        throw IoError("failed while writing results", path.string());
    }
}

std::vector<std::filesystem::path> write_experiment(const ExperimentResult& result,
                                                    const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw IoError("cannot create output directory", dir.string());
    }
    std::vector<std::filesystem::path> written;
    nlohmann::ordered_json meta;
    meta["experiment"] = result.experiment;
    meta["series"] = nlohmann::ordered_json::array();
    for (const auto& series : result.series) {
        const auto path = dir / (result.experiment + "_" + series.name + ".csv");
        write_results(series, path);
        written.push_back(path);

        nlohmann::ordered_json s;
        s["name"] = series.name;
        s["sweep_variable"] = series.sweep_variable;
        s["csv"] = path.filename().string();
        s["levels"] = nlohmann::ordered_json::array();
        for (const auto& level : series.levels) {
            nlohmann::ordered_json l;
            l["level"] = level.level;
            l["seed"] = level.seed;
            l["achieved_edge_length"] = level.achieved_edge_length;
            l["old_nodes"] = level.old_nodes;
            l["old_elements"] = level.old_elements;
            l["new_nodes"] = level.new_nodes;
            l["new_elements"] = level.new_elements;
            l["excluded_samples"] = level.excluded;
            l["status"] = level.error.empty() ? (level.stats ? "ok" : "absent") : "error";
            if (!level.error.empty()) {
                l["error"] = level.error;
            }
            s["levels"].push_back(std::move(l));
        }
        meta["series"].push_back(std::move(s));
    }
    const auto meta_path = dir / (result.experiment + ".meta.json");
    std::ofstream out(meta_path, std::ios::binary);
    if (!out) {
        throw IoError("cannot write metadata", meta_path.string());
    }
    out << meta.dump(2) << '\n';
    written.push_back(meta_path);
    return written;
}

void write_aspect_ratios(const AspectRatioTable& table, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot write aspect ratios", path.string());
    }
    out << "mesh,element,aspect_ratio\n";
    for (const auto& [name, values] : table.meshes) {
        for (std::size_t e = 0; e < values.size(); ++e) {
            out << name << ',' << e << ',' << format_number(values[e]) << '\n';
        }
    }
}

SquareExperimentConfig SquareExperimentConfig::from(const Config& config) {
    config.require_known({"side", "old_edges", "fixed_new_edge", "new_edges", "fixed_old_edge",
                          "seed", "deformation"});
    SquareExperimentConfig c;
    c.side = config.get_double("side", c.side);
    c.old_edges = config.get_doubles("old_edges", c.old_edges);
    c.fixed_new_edge = config.get_double("fixed_new_edge", c.fixed_new_edge);
    c.new_edges = config.get_doubles("new_edges", c.new_edges);
    c.fixed_old_edge = config.get_double("fixed_old_edge", c.fixed_old_edge);
    c.seed = config.get_uint("seed", c.seed);
    const std::string kind = config.get_string("deformation", "square_quadratic");
    if (kind != "square_quadratic" && kind != "identity") {
        throw ConfigError("deformation must be square_quadratic or identity");
    }
    c.identity = kind == "identity";
    require_positive_list(c.old_edges, "old_edges");
    require_positive_list(c.new_edges, "new_edges");
    require_positive_list({c.side, c.fixed_new_edge, c.fixed_old_edge}, "side/fixed edges");
    return c;
}

CylinderExperimentConfig CylinderExperimentConfig::from(const Config& config) {
    config.require_known({"old_edges", "fixed_new_edge", "new_edges", "fixed_old_edge",
                          "iterations", "seed", "deformation"});
    CylinderExperimentConfig c;
    c.old_edges = config.get_doubles("old_edges", c.old_edges);
    c.fixed_new_edge = config.get_double("fixed_new_edge", c.fixed_new_edge);
    c.new_edges = config.get_doubles("new_edges", c.new_edges);
    c.fixed_old_edge = config.get_double("fixed_old_edge", c.fixed_old_edge);
    const long iterations = config.get_int("iterations", static_cast<long>(c.iterations));
    if (iterations < 0) {
        throw ConfigError("iterations must be non-negative");
    }
    c.iterations = static_cast<std::size_t>(iterations);
    c.seed = config.get_uint("seed", c.seed);
    const std::string kind = config.get_string("deformation", "cylinder_sinusoidal");
    if (kind != "cylinder_sinusoidal" && kind != "identity") {
        throw ConfigError("deformation must be cylinder_sinusoidal or identity");
    }
    c.identity = kind == "identity";
    require_positive_list(c.old_edges, "old_edges");
    require_positive_list(c.new_edges, "new_edges");
    require_positive_list({c.fixed_new_edge, c.fixed_old_edge}, "fixed edges");
    return c;
}

StrainExperimentConfig StrainExperimentConfig::from(const Config& config) {
    config.require_known({"side", "edges", "new_edges", "coarse_old_edge", "fine_old_edge",
                          "kappa_s", "kappa_alpha", "seed"});
    StrainExperimentConfig c;
    c.side = config.get_double("side", c.side);
    c.edges = config.get_doubles("edges", c.edges);
    c.new_edges = config.get_doubles("new_edges", c.new_edges);
    c.coarse_old_edge = config.get_double("coarse_old_edge", c.coarse_old_edge);
    c.fine_old_edge = config.get_double("fine_old_edge", c.fine_old_edge);
    c.params = params_from(config);
    c.seed = config.get_uint("seed", c.seed);
    require_positive_list(c.edges, "edges");
    require_positive_list(c.new_edges, "new_edges");
    require_positive_list({c.side, c.coarse_old_edge, c.fine_old_edge}, "side/old edges");
    return c;
}

FrequencyExperimentConfig FrequencyExperimentConfig::from(const Config& config) {
    config.require_known({"side", "initial_edge", "remesh_edge", "t_end", "frequencies", "kappa_s",
                          "kappa_alpha", "seed"});
    FrequencyExperimentConfig c;
    c.side = config.get_double("side", c.side);
    c.initial_edge = config.get_double("initial_edge", c.initial_edge);
    c.remesh_edge = config.get_double("remesh_edge", c.remesh_edge);
    c.t_end = config.get_double("t_end", c.t_end);
    c.frequencies = config.get_ints("frequencies", c.frequencies);
    c.params = params_from(config);
    c.seed = config.get_uint("seed", c.seed);
    require_positive_list({c.side, c.initial_edge, c.remesh_edge, c.t_end},
                          "side/initial_edge/remesh_edge/t_end");
    if (c.frequencies.empty()) {
        throw ConfigError("key 'frequencies' needs at least one value");
    }
    for (long n : c.frequencies) {
        if (n < 0) {
            throw ConfigError("frequencies must be non-negative");
        }
    }
    return c;
}

SquarePipeline run_square_pipeline(double side, double old_edge, double new_edge,
                                   const AnalyticDeformation& deformation, std::uint64_t seed) {
    const SurfaceMesh undeformed = shapes::square(side, old_edge, seed);
    SquarePipeline out;
    out.old_mesh = deform(undeformed, deformation, resolve_time(deformation, std::nullopt));
    RemeshConfig rc;
    rc.target_edge_length = new_edge;
    rc.seed = seed + 1;
    const RemeshResult remeshed = remesh_planar(out.old_mesh, rc);
    out.new_mesh = transfer_initial_configuration(out.old_mesh, remeshed.mesh).mesh;
    out.spatial = spatial_error(out.new_mesh, deformation);
    return out;
}

CylinderPipeline run_cylinder_pipeline(double old_edge, double new_edge,
                                       const AnalyticDeformation& deformation,
                                       std::size_t iterations, std::uint64_t seed) {
    const SurfaceMesh undeformed = shapes::cylinder(kCylinderRadius, kCylinderHeight, old_edge, seed);
    CylinderPipeline out;
    out.old_mesh = deform(undeformed, deformation, 0.0);
    RemeshConfig rc;
    rc.target_edge_length = new_edge;
    rc.iterations = iterations;
    rc.seed = seed + 1;
    const RemeshResult remeshed = remesh_surface(out.old_mesh, rc);
    out.new_mesh = transfer_initial_configuration(out.old_mesh, remeshed.mesh).mesh;
    out.spatial = spatial_error(out.new_mesh, deformation);
    return out;
}

ExperimentResult run_square_spatial_experiment(const SquareExperimentConfig& config) {
    const AnalyticDeformation d =
        config.identity ? AnalyticDeformation::identity() : AnalyticDeformation::square_quadratic();
    ExperimentResult result;
    result.experiment = "square";

    ExperimentSeries old_sweep{"old_edge_sweep", "old_edge_length", {}};
    for (double h : config.old_edges) {
        old_sweep.levels.push_back(run_level(h, config.seed, [&](LevelResult& level) {
            const auto run = run_square_pipeline(config.side, h, config.fixed_new_edge, d, config.seed);
            level.stats = summarize_samples(run.spatial);
            level.achieved_edge_length = median_edge_length(run.old_mesh, Configuration::initial);
            fill_sizes(level, run.old_mesh, run.new_mesh);
        }));
    }
    ExperimentSeries new_sweep{"new_edge_sweep", "new_edge_length", {}};
    for (double h : config.new_edges) {
        new_sweep.levels.push_back(run_level(h, config.seed, [&](LevelResult& level) {
            const auto run = run_square_pipeline(config.side, config.fixed_old_edge, h, d, config.seed);
            level.stats = summarize_samples(run.spatial);
            level.achieved_edge_length = median_edge_length(run.new_mesh, Configuration::current);
            fill_sizes(level, run.old_mesh, run.new_mesh);
        }));
    }
    result.series = {std::move(old_sweep), std::move(new_sweep)};
    return result;
}

ExperimentResult run_cylinder_spatial_experiment(const CylinderExperimentConfig& config) {
    const AnalyticDeformation d = config.identity ? AnalyticDeformation::identity()
                                                  : AnalyticDeformation::cylinder_sinusoidal();
    ExperimentResult result;
    result.experiment = "cylinder";

    ExperimentSeries old_sweep{"old_edge_sweep", "old_edge_length", {}};
    for (double h : config.old_edges) {
        old_sweep.levels.push_back(run_level(h, config.seed, [&](LevelResult& level) {
            const auto run =
                run_cylinder_pipeline(h, config.fixed_new_edge, d, config.iterations, config.seed);
            level.stats = summarize_samples(run.spatial);
            level.achieved_edge_length = median_edge_length(run.old_mesh, Configuration::initial);
            fill_sizes(level, run.old_mesh, run.new_mesh);
        }));
    }
    ExperimentSeries new_sweep{"new_edge_sweep", "new_edge_length", {}};
    for (double h : config.new_edges) {
        new_sweep.levels.push_back(run_level(h, config.seed, [&](LevelResult& level) {
            const auto run =
                run_cylinder_pipeline(config.fixed_old_edge, h, d, config.iterations, config.seed);
            level.stats = summarize_samples(run.spatial);
            level.achieved_edge_length = median_edge_length(run.new_mesh, Configuration::current);
            fill_sizes(level, run.old_mesh, run.new_mesh);
        }));
    }
    result.series = {std::move(old_sweep), std::move(new_sweep)};
    return result;
}

ExperimentResult run_strain_experiment(const StrainExperimentConfig& config) {
    const AnalyticDeformation d = AnalyticDeformation::square_quadratic();
    ExperimentResult result;
    result.experiment = "strain";

    auto remeshed_level = [&](double old_edge, double new_edge, double level_value) {
        return run_level(level_value, config.seed, [&](LevelResult& level) {
            const auto run = run_square_pipeline(config.side, old_edge, new_edge, d, config.seed);
            const auto strain = strain_error(run.new_mesh, config.params, d);
            level.stats = summarize_samples(strain.samples);
            level.excluded = strain.excluded;
            level.achieved_edge_length = median_edge_length(run.new_mesh, Configuration::current);
            fill_sizes(level, run.old_mesh, run.new_mesh);
        });
    };

    ExperimentSeries fixed{"fixed", "edge_length", {}};
    ExperimentSeries remeshed{"remeshed", "edge_length", {}};
    for (double h : config.edges) {
        fixed.levels.push_back(run_level(h, config.seed, [&](LevelResult& level) {
            const SurfaceMesh mesh = deform(shapes::square(config.side, h, config.seed), d, 0.0);
            const auto strain = strain_error(mesh, config.params, d);
            level.stats = summarize_samples(strain.samples);
            level.excluded = strain.excluded;
            level.achieved_edge_length = median_edge_length(mesh, Configuration::initial);
            fill_sizes(level, mesh, mesh);
        }));
        remeshed.levels.push_back(remeshed_level(h, h, h));
    }
    ExperimentSeries coarse{"remeshed_coarse_old", "new_edge_length", {}};
    ExperimentSeries fine{"remeshed_fine_old", "new_edge_length", {}};
    for (double h : config.new_edges) {
        coarse.levels.push_back(remeshed_level(config.coarse_old_edge, h, h));
        fine.levels.push_back(remeshed_level(config.fine_old_edge, h, h));
    }
    result.series = {std::move(fixed), std::move(remeshed), std::move(coarse), std::move(fine)};
    return result;
}

ExperimentResult run_frequency_experiment(const FrequencyExperimentConfig& config) {
    const AnalyticDeformation d = AnalyticDeformation::time_interpolated_quadratic(config.t_end);
    ExperimentResult result;
    result.experiment = "frequency";
    ExperimentSeries spatial{"spatial", "remesh_events", {}};
    ExperimentSeries strain{"strain", "remesh_events", {}};

    for (long n : config.frequencies) {
        const double level_value = static_cast<double>(n);
        SurfaceMesh final_mesh;
        SurfaceMesh first_mesh;
        LevelResult spatial_level = run_level(level_value, config.seed, [&](LevelResult& level) {
            const SurfaceMesh initial = shapes::square(config.side, config.initial_edge, config.seed);
            first_mesh = initial;
            SurfaceMesh mesh = initial;
            for (long k = 1; k <= n; ++k) {
                const double t = config.t_end * static_cast<double>(k) / static_cast<double>(n);
                // nodes follow the prescribed motion from their own initial positions
                mesh = deform(mesh, d, t);
                RemeshConfig rc;
                rc.target_edge_length = config.remesh_edge;
                rc.seed = config.seed + static_cast<std::uint64_t>(k);
                const RemeshResult remeshed = remesh_planar(mesh, rc);
                mesh = transfer_initial_configuration(mesh, remeshed.mesh).mesh;
            }
            if (n == 0) {
                mesh = deform(mesh, d, config.t_end);
            } else {
                level.stats = summarize_samples(spatial_error(mesh, d, config.t_end));
            }
            level.achieved_edge_length = median_edge_length(mesh, Configuration::current);
            fill_sizes(level, first_mesh, mesh);
            final_mesh = std::move(mesh);
        });

        LevelResult strain_level = spatial_level;
        if (spatial_level.error.empty()) {
            strain_level = run_level(level_value, config.seed, [&](LevelResult& level) {
                level = spatial_level;
                const auto samples = strain_error(final_mesh, config.params, d, config.t_end);
                level.stats = summarize_samples(samples.samples);
                level.excluded = samples.excluded;
            });
        }
        spatial.levels.push_back(std::move(spatial_level));
        strain.levels.push_back(std::move(strain_level));
    }
    result.series = {std::move(spatial), std::move(strain)};
    return result;
}

AspectRatioTable square_aspect_ratio_table(double side, double old_edge, double new_edge,
                                           std::uint64_t seed) {
    const auto run =
        run_square_pipeline(side, old_edge, new_edge, AnalyticDeformation::square_quadratic(), seed);
    AspectRatioTable table;
    table.meshes.emplace_back("M0", aspect_ratios(run.old_mesh, Configuration::initial));
    table.meshes.emplace_back("M", aspect_ratios(run.old_mesh, Configuration::current));
    table.meshes.emplace_back("M_hat_0", aspect_ratios(run.new_mesh, Configuration::initial));
    table.meshes.emplace_back("M_hat", aspect_ratios(run.new_mesh, Configuration::current));
    return table;
}

} // namespace hdremesh
