#include "hdremesh/simulation.hpp"

#include <cmath>
#include <fstream>
#include <ostream>

#include "json.hpp"

#include "hdremesh/csv.hpp"
#include "hdremesh/errors.hpp"
#include "hdremesh/mesh_io.hpp"
#include "hdremesh/remesh.hpp"
#include "hdremesh/shapes.hpp"
#include "hdremesh/transfer.hpp"

namespace hdremesh {

namespace {

SimulationRow sample(const SurfaceMesh& mesh, double time) {
    const QuantileSummary q = mesh_quality_summary(mesh, Configuration::current);
    return {time, total_area(mesh, Configuration::current), q.median, q.q1, q.q3,
            mesh.element_count()};
}

void require_positive(double v, const char* key) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw ConfigError(std::string("key '") + key + "' must be positive and finite");
    }
}

} // namespace

void SimulationConfig::validate() const {
    require_positive(radius, "radius");
    require_positive(length, "length");
    require_positive(edge_length, "edge_length");
    require_positive(mobility, "mobility");
    require_positive(dt, "dt");
    require_positive(t_end, "t_end");
    require_positive(remesh_interval, "remesh_interval");
    require_positive(sample_interval, "sample_interval");
    if (!std::isfinite(pressure)) {
        throw ConfigError("key 'pressure' must be finite");
    }
    params.validate();
}

SimulationConfig SimulationConfig::from(const Config& config) {
    config.require_known({"radius", "length", "edge_length", "kappa_s", "kappa_alpha", "pressure",
                          "mobility", "dt", "t_end", "remesh_interval", "remesh_iterations",
                          "sample_interval", "seed"});
    SimulationConfig c;
    c.radius = config.get_double("radius", c.radius);
    c.length = config.get_double("length", c.length);
    c.edge_length = config.get_double("edge_length", c.edge_length);
    c.params.kappa_s = config.get_double("kappa_s", c.params.kappa_s);
    c.params.kappa_alpha = config.get_double("kappa_alpha", c.params.kappa_alpha);
    c.pressure = config.get_double("pressure", c.pressure);
    c.mobility = config.get_double("mobility", c.mobility);
    c.dt = config.get_double("dt", c.dt);
    c.t_end = config.get_double("t_end", c.t_end);
    c.remesh_interval = config.get_double("remesh_interval", c.remesh_interval);
    const long iterations = config.get_int("remesh_iterations", static_cast<long>(c.remesh_iterations));
    if (iterations < 1) {
        throw ConfigError("key 'remesh_iterations' must be at least 1");
    }
    c.remesh_iterations = static_cast<std::size_t>(iterations);
    c.sample_interval = config.get_double("sample_interval", c.sample_interval);
    c.seed = config.get_uint("seed", c.seed);
    c.validate();
    return c;
}

const SimulationRun& SimulationResult::get(const std::string& name) const {
    for (const auto& run : runs) {
        if (run.name == name) {
            return run;
        }
    }
    throw ArgumentError("simulation has no run " + name);
}

SimulationRun run_membrane(const SurfaceMesh& initial, const SimulationConfig& config, bool remesh,
                           const std::string& name) {
    config.validate();
    SimulationRun run;
    run.name = name;
    MembraneSimState state{initial, config.params, config.pressure, config.mobility, 0.0};
    run.rows.push_back(sample(state.mesh, 0.0));

    RemeshConfig rc;
    rc.target_edge_length = config.edge_length;
    rc.iterations = config.remesh_iterations;
    rc.trigger = RemeshTrigger::interval;
    rc.interval = config.remesh_interval;

    const auto steps = static_cast<long>(std::llround(config.t_end / config.dt));
    double last_remesh = 0.0;
    double next_sample = config.sample_interval;
    for (long s = 1; s <= steps; ++s) {
        try {
            state = step_overdamped(state, config.dt);
        } catch (const DivergenceError& err) {
            run.diverged_at = err.time();
            run.divergence = err.what();
            break;
        }
        // recompute from the step count so sampling and triggers do not drift
        state.time = config.dt * static_cast<double>(s);
        if (remesh && should_remesh(state.mesh, rc, state.time, last_remesh)) {
            rc.seed = config.seed + run.remesh_count + 1;
            const RemeshResult remeshed = remesh_surface(state.mesh, rc);
            state.mesh = transfer_initial_configuration(state.mesh, remeshed.mesh).mesh;
            last_remesh = state.time;
            ++run.remesh_count;
        }
        if (state.time >= next_sample - 1e-9) {
            run.rows.push_back(sample(state.mesh, state.time));
            next_sample += config.sample_interval;
        }
    }
    run.final_mesh = state.mesh;
    return run;
}

SimulationResult run_pressure_simulation(const SimulationConfig& config) {
    config.validate();
    const SurfaceMesh start =
        shapes::capsule(config.radius, config.length, config.edge_length, config.seed);
    SimulationResult result;
    result.runs.push_back(run_membrane(start, config, false, "fixed"));
    result.runs.push_back(run_membrane(start, config, true, "remeshed"));
    return result;
}

double relative_area_rate(const SimulationRun& run, double window) {
    if (run.rows.size() < 2 || !(window > 0.0)) {
        throw ArgumentError("area rate needs at least two samples and a positive window");
    }
    const SimulationRow& last = run.rows.back();
    const double start_time = last.time - window;
    std::size_t i = run.rows.size() - 1;
    while (i > 0 && run.rows[i].time > start_time + 1e-9) {
        --i;
    }
    const SimulationRow& first = run.rows[i];
    const double span = last.time - first.time;
    if (!(span > 0.0)) {
        throw ArgumentError("area rate window holds a single sample");
    }
    return std::abs(last.total_area - first.total_area) / (last.total_area * span);
}

void write_timeseries(std::ostream& out, const SimulationResult& result) {
    out << kTimeseriesHeader << '\n';
    for (const auto& run : result.runs) {
        for (const auto& row : run.rows) {
            out << run.name << ',' << format_number(row.time) << ','
                << format_number(row.total_area) << ',' << format_number(row.median_ar) << ','
                << format_number(row.q1_ar) << ',' << format_number(row.q3_ar) << ','
                << row.n_elements << '\n';
        }
    }
}

std::vector<std::filesystem::path> write_simulation(const SimulationResult& result,
                                                    const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw IoError("cannot create output directory", dir.string());
    }
    std::vector<std::filesystem::path> written;
    const auto csv_path = dir / "simulation_timeseries.csv";
    {
        std::ofstream out(csv_path, std::ios::binary);
        if (!out) {
            throw IoError("cannot write time series", csv_path.string());
        }
        write_timeseries(out, result);
    }
    written.push_back(csv_path);

    nlohmann::ordered_json meta;
    meta["runs"] = nlohmann::ordered_json::array();
    for (const auto& run : result.runs) {
        const auto mesh_path = dir / ("simulation_" + run.name + "_final.off");
        io::write_mesh_file(mesh_path, run.final_mesh, Configuration::current);
        written.push_back(mesh_path);
        nlohmann::ordered_json r;
        r["name"] = run.name;
        r["samples"] = run.rows.size();
        r["remesh_count"] = run.remesh_count;
        r["final_nodes"] = run.final_mesh.node_count();
        r["final_elements"] = run.final_mesh.element_count();
        if (run.diverged_at) {
            r["diverged_at"] = *run.diverged_at;
            r["divergence"] = run.divergence;
        } else {
            r["diverged_at"] = nullptr;
        }
        meta["runs"].push_back(std::move(r));
    }
    const auto meta_path = dir / "simulation.meta.json";
    std::ofstream out(meta_path, std::ios::binary);
    if (!out) {
        throw IoError("cannot write metadata", meta_path.string());
    }
    out << meta.dump(2) << '\n';
    written.push_back(meta_path);
    return written;
}

} // namespace hdremesh
