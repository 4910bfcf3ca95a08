#pragma once

// Flat key=value run configuration with command-line overrides. Keys use the
// field names below (snake_case); the CLI exposes the same names in
// kebab-case. Command line wins over file, file wins over defaults.

#include "otoc/protocols.hpp"
#include "otoc/spin_model.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace otoc {

inline constexpr const char* kVersion = "1.0.0";

// Configuration mistakes (bad key, bad value, failed invariant). The CLI
// maps these to exit code 1; anything else that escapes is exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class ExperimentKind { otoc, qpd, nonclassicality, sweep };

struct RunConfig {
    int n_qubits = 5;
    double j_coupling = kDefaultJCoupling;  // rad/us
    double h_over_j = 0.0;
    double g_over_j = 1.05;
    std::optional<double> t2_star_us = 130.0;        // "none" -> closed system
    std::optional<double> temperature_over_j = 1.0;  // "infinite" -> I/2^N
    std::optional<double> t_max_us;  // default depends on the experiment
    double dt_grid_us = 0.1;
    double dt_integration_us = 0.005;
    std::vector<ProtocolKind> protocols = {ProtocolKind::ideal, ProtocolKind::weak,
                                           ProtocolKind::interferometric, ProtocolKind::clock};
    ExperimentKind experiment = ExperimentKind::otoc;
    int sweep_points = 15;  // h/J values equally spaced over [0, 0.5]
    std::optional<double> threshold;  // timescale threshold; default dt_grid^2
    std::string output_dir;  // empty -> $OTOC_LAB_OUTPUT_DIR, else "."
    int worker_count = 1;

    // The sweep needs a longer horizon than the single-case experiments to
    // observe the late return to classicality.
    double resolved_t_max() const {
        if (t_max_us) return *t_max_us;
        return experiment == ExperimentKind::sweep ? 200.0 : 60.0;
    }
    double resolved_threshold() const {
        return threshold ? *threshold : dt_grid_us * dt_grid_us;
    }
    std::string resolved_output_dir() const;
};

// Sets one field from its textual value; throws ConfigError naming the key
// on unknown keys or unparseable values.
void apply_config_entry(RunConfig& config, const std::string& key, const std::string& value);

// Reads a flat key=value file ('#' comments and blank lines allowed).
void apply_config_file(RunConfig& config, const std::string& path);

// Cross-field invariants; throws ConfigError naming the offending field.
void validate(const RunConfig& config);

std::string to_string(ProtocolKind kind);
std::string to_string(ExperimentKind kind);

}  // namespace otoc
