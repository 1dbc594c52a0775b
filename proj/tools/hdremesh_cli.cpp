#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "hdremesh/config.hpp"
#include "hdremesh/errors.hpp"
#include "hdremesh/experiments.hpp"
#include "hdremesh/mesh_io.hpp"
#include "hdremesh/remesh.hpp"
#include "hdremesh/simulation.hpp"
#include "hdremesh/transfer.hpp"

namespace fs = std::filesystem;
using namespace hdremesh;

namespace {

struct ExperimentOptions {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::string out_dir = "results";
};

struct RemeshOptions {
    std::string old_initial;
    std::string old_current;
    double target_edge_length = 0.0;
    std::string out_prefix;
    std::uint64_t seed = 0;
    std::size_t iterations = 10;
    std::string format = "off";
};

void add_experiment_options(CLI::App& cmd, ExperimentOptions& opts) {
    cmd.add_option("--config", opts.config, "key = value settings file")->check(CLI::ExistingFile);
    cmd.add_option("--seed", opts.seed, "overrides the seed in the settings file");
    cmd.add_option("--out-dir", opts.out_dir, "output directory")->capture_default_str();
}

Config load_config(const ExperimentOptions& opts) {
    Config config = opts.config.empty() ? Config{} : Config::load(opts.config);
    if (opts.seed) {
        config.set("seed", std::to_string(*opts.seed));
    }
    return config;
}

fs::path prepare_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw IoError("cannot create output directory: " + ec.message(), dir);
    }
    return fs::path(dir);
}

void report(const std::vector<fs::path>& files) {
    for (const auto& f : files) {
        std::cout << "wrote " << f.string() << '\n';
    }
}

void report_failures(const ExperimentResult& result) {
    for (const auto& series : result.series) {
        for (const auto& level : series.levels) {
            if (!level.error.empty()) {
                std::cerr << "warning: " << result.experiment << '/' << series.name << " level "
                          << level.level << " aborted: " << level.error << '\n';
            }
        }
    }
}

void run_remesh(const RemeshOptions& opts) {
    const SurfaceMesh old_mesh = io::read_history_pair(opts.old_initial, opts.old_current);
    RemeshConfig rc;
    rc.target_edge_length = opts.target_edge_length;
    rc.seed = opts.seed;
    rc.iterations = opts.iterations;
    const RemeshResult remeshed = remesh(old_mesh, rc);
    for (const auto& w : remeshed.warnings) {
        std::cerr << "warning: " << w << '\n';
    }
    const TransferOutcome outcome = transfer_initial_configuration(old_mesh, remeshed.mesh);

    const fs::path prefix(opts.out_prefix);
    if (prefix.has_parent_path()) {
        prepare_dir(prefix.parent_path().string());
    }
    const std::string ext = "." + opts.format;
    const fs::path initial = prefix.string() + "_initial" + ext;
    const fs::path current = prefix.string() + "_current" + ext;
    const fs::path table = prefix.string() + "_transfer.csv";
    io::write_history_pair(outcome.mesh, initial, current);
    std::ofstream out(table, std::ios::binary);
    if (!out) {
        throw IoError("cannot open file for writing", table.string());
    }
    outcome.report.write_csv(out);
    if (!out) {
        throw IoError("write failed", table.string());
    }
    std::cout << "nodes " << outcome.mesh.node_count() << " elements "
              << outcome.mesh.element_count() << " median_edge_length "
              << remeshed.achieved_median_edge_length << '\n';
    report({initial, current, table});
}

void run_square(const ExperimentOptions& opts) {
    const auto config = SquareExperimentConfig::from(load_config(opts));
    const fs::path dir = prepare_dir(opts.out_dir);
    const ExperimentResult result = run_square_spatial_experiment(config);
    report_failures(result);
    auto files = write_experiment(result, dir);
    const fs::path histogram = dir / "square_aspect_ratio.csv";
    write_aspect_ratios(square_aspect_ratio_table(config.side, config.fixed_old_edge,
                                                  config.fixed_new_edge, config.seed),
                        histogram);
    files.push_back(histogram);
    report(files);
}

void run_cylinder(const ExperimentOptions& opts) {
    const auto config = CylinderExperimentConfig::from(load_config(opts));
    const fs::path dir = prepare_dir(opts.out_dir);
    const ExperimentResult result = run_cylinder_spatial_experiment(config);
    report_failures(result);
    report(write_experiment(result, dir));
}

void run_strain(const ExperimentOptions& opts) {
    const auto config = StrainExperimentConfig::from(load_config(opts));
    const fs::path dir = prepare_dir(opts.out_dir);
    const ExperimentResult result = run_strain_experiment(config);
    report_failures(result);
    report(write_experiment(result, dir));
}

void run_frequency(const ExperimentOptions& opts) {
    const auto config = FrequencyExperimentConfig::from(load_config(opts));
    const fs::path dir = prepare_dir(opts.out_dir);
    const ExperimentResult result = run_frequency_experiment(config);
    report_failures(result);
    report(write_experiment(result, dir));
}

void run_simulate(const ExperimentOptions& opts) {
    const auto config = SimulationConfig::from(load_config(opts));
    const fs::path dir = prepare_dir(opts.out_dir);
    const SimulationResult result = run_pressure_simulation(config);
    for (const auto& run : result.runs) {
        if (run.diverged_at) {
            std::cerr << "warning: run " << run.name << " diverged at t=" << *run.diverged_at
                      << ": " << run.divergence << '\n';
        }
    }
    report(write_simulation(result, dir));
}

int fail(std::string_view category, const std::string& message) {
    std::string line = message;
    for (char& c : line) {
        if (c == '\n' || c == '\r') {
            c = ' ';
        }
    }
    std::cerr << "error[" << category << "]: " << line << '\n';
    return category == "invalid_argument" ? 2 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"History-dependent remeshing of distorted triangle meshes"};
    app.require_subcommand(1);

    RemeshOptions remesh_opts;
    auto* remesh_cmd = app.add_subcommand("remesh", "remesh a mesh pair and transfer its initial configuration");
    remesh_cmd->add_option("--old-initial", remesh_opts.old_initial, "initial configuration (.off/.obj)")
        ->required()
        ->check(CLI::ExistingFile);
    remesh_cmd->add_option("--old-current", remesh_opts.old_current, "current configuration (.off/.obj)")
        ->required()
        ->check(CLI::ExistingFile);
    remesh_cmd->add_option("--target-edge-length", remesh_opts.target_edge_length)
        ->required()
        ->check(CLI::PositiveNumber);
    remesh_cmd->add_option("--out-prefix", remesh_opts.out_prefix)->required();
    remesh_cmd->add_option("--seed", remesh_opts.seed)->capture_default_str();
    remesh_cmd->add_option("--iterations", remesh_opts.iterations, "surface remesher passes")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    remesh_cmd->add_option("--format", remesh_opts.format)
        ->capture_default_str()
        ->check(CLI::IsMember({"off", "obj"}));

    ExperimentOptions square_opts, cylinder_opts, strain_opts, frequency_opts, simulate_opts;
    auto* square_cmd = app.add_subcommand("exp-square", "planar spatial error sweeps");
    add_experiment_options(*square_cmd, square_opts);
    auto* cylinder_cmd = app.add_subcommand("exp-cylinder", "cylinder spatial error sweeps");
    add_experiment_options(*cylinder_cmd, cylinder_opts);
    auto* strain_cmd = app.add_subcommand("exp-strain", "strain energy error sweeps");
    add_experiment_options(*strain_cmd, strain_opts);
    auto* frequency_cmd = app.add_subcommand("exp-frequency", "remeshing frequency sweep");
    add_experiment_options(*frequency_cmd, frequency_opts);
    auto* simulate_cmd = app.add_subcommand("simulate", "pressurized capsule, fixed vs remeshed");
    add_experiment_options(*simulate_cmd, simulate_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail("invalid_argument", e.what());
    }

    try {
        if (*remesh_cmd) {
            run_remesh(remesh_opts);
        } else if (*square_cmd) {
            run_square(square_opts);
        } else if (*cylinder_cmd) {
            run_cylinder(cylinder_opts);
        } else if (*strain_cmd) {
            run_strain(strain_opts);
        } else if (*frequency_cmd) {
            run_frequency(frequency_opts);
        } else if (*simulate_cmd) {
            run_simulate(simulate_opts);
        }
    } catch (const Error& e) {
        return fail(to_string(e.category()), e.what());
    } catch (const std::exception& e) {
        return fail("internal", e.what());
    }
    return 0;
}
