// otoc_lab: command-line front end for the OTOC / quasiprobability
// scrambling-witness simulator. Two subcommands:
//
//   run   — execute an experiment (otoc | qpd | nonclassicality | sweep)
//           from a key=value config file and/or command-line overrides
//   plot  — render a produced CSV into a static SVG
//
// Exit codes: 0 success, 1 configuration error, 2 runtime/numerical error.

#include "otoc/experiments.hpp"
#include "otoc/svg_plot.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <exception>
#include <string>
#include <utility>
#include <vector>

namespace {

struct RunCli {
    std::string config_file;
    // Overrides in command-line order; applied after the config file so the
    // command line wins.
    std::vector<std::pair<std::string, std::string>> overrides;
};

void add_override_option(CLI::App* cmd, RunCli& cli, const std::string& flag,
                         const std::string& key, const std::string& desc) {
    cmd->add_option_function<std::string>(
        flag, [&cli, key](const std::string& value) { cli.overrides.emplace_back(key, value); },
        desc);
}

int do_run(const RunCli& cli) {
    otoc::RunConfig config;
    if (!cli.config_file.empty()) {
        otoc::apply_config_file(config, cli.config_file);
    }
    for (const auto& [key, value] : cli.overrides) {
        otoc::apply_config_entry(config, key, value);
    }
    const std::vector<std::string> outputs = otoc::run_experiment(config);
    for (const std::string& path : outputs) {
        std::printf("wrote %s\n", path.c_str());
    }
    return 0;
}

int do_plot(const std::string& csv, const std::string& kind_name, std::string output) {
    const auto kind = otoc::plot_kind_from_string(kind_name);
    if (!kind) {
        throw otoc::ConfigError("unknown plot kind '" + kind_name +
                                "' (expected otoc, qpd, nonclassicality or ratio)");
    }
    if (output.empty()) {
        output = csv;
        const auto dot = output.find_last_of('.');
        if (dot != std::string::npos && output.find('/', dot) == std::string::npos) {
            output.resize(dot);
        }
        output += ".svg";
    }
    otoc::emit_plot(csv, *kind, output);
    std::printf("wrote %s\n", output.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"OTOC and quasiprobability scrambling-witness simulator"};
    app.require_subcommand(1);

    RunCli run_cli;
    CLI::App* run = app.add_subcommand("run", "run an experiment and write CSV outputs");
    run->add_option("--config", run_cli.config_file, "key=value configuration file");
    add_override_option(run, run_cli, "--n-qubits", "n_qubits", "chain length (default 5)");
    add_override_option(run, run_cli, "--j-coupling", "j_coupling",
                        "Ising coupling in rad/us (default 0.25)");
    add_override_option(run, run_cli, "--h-over-j", "h_over_j", "longitudinal field ratio");
    add_override_option(run, run_cli, "--g-over-j", "g_over_j",
                        "transverse field ratio (default 1.05)");
    add_override_option(run, run_cli, "--t2-star-us", "t2_star_us",
                        "dephasing time in us, or 'none' for closed evolution (default 130)");
    add_override_option(run, run_cli, "--temperature-over-j", "temperature_over_j",
                        "initial-state temperature T/J, or 'infinite' (default 1)");
    add_override_option(run, run_cli, "--t-max-us", "t_max_us",
                        "time horizon in us (default 60; sweep 200)");
    add_override_option(run, run_cli, "--dt-grid-us", "dt_grid_us",
                        "output grid spacing in us (default 0.1)");
    add_override_option(run, run_cli, "--dt-integration-us", "dt_integration_us",
                        "inner integration step in us (default 0.005)");
    add_override_option(run, run_cli, "--protocols", "protocols",
                        "comma list of ideal,weak,interferometric,clock");
    add_override_option(run, run_cli, "--experiment", "experiment",
                        "otoc | qpd | nonclassicality | sweep");
    add_override_option(run, run_cli, "--sweep-points", "sweep_points",
                        "number of h/J values in [0, 0.5] (default 15)");
    add_override_option(run, run_cli, "--threshold", "threshold",
                        "timescale detection threshold (default dt_grid^2)");
    add_override_option(run, run_cli, "--output-dir", "output_dir",
                        "output directory (default $OTOC_LAB_OUTPUT_DIR or '.')");
    add_override_option(run, run_cli, "--worker-count", "worker_count",
                        "parallel grid evaluators (default 1)");

    std::string plot_csv, plot_kind, plot_output;
    CLI::App* plot = app.add_subcommand("plot", "render a CSV output as SVG");
    plot->add_option("--csv", plot_csv, "input CSV produced by 'run'")->required();
    plot->add_option("--kind", plot_kind, "otoc | qpd | nonclassicality | ratio")->required();
    plot->add_option("--output", plot_output, "output SVG path (default: CSV path with .svg)");

    try {
        app.parse(argc, argv);
        if (run->parsed()) return do_run(run_cli);
        if (plot->parsed()) return do_plot(plot_csv, plot_kind, plot_output);
        return 1;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        // Treat help/version as success, any flag misuse as a config error.
        return code == 0 ? 0 : 1;
    } catch (const otoc::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
