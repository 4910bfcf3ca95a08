#pragma once

// Experiment drivers behind the CLI: each runs one configured computation,
// writes its CSV(s) plus a manifest of the fully resolved configuration, and
// returns the paths written. Outputs are deterministic: fixed evaluation
// order for reductions, fixed formatting, and per-grid-point work that is
// independent of the worker count.

#include "otoc/run_config.hpp"

#include <string>
#include <vector>

namespace otoc {

// Validates `config`, runs the configured experiment and writes the outputs
// into config.resolved_output_dir(). Throws ConfigError for configuration
// problems (CLI exit code 1) and std::runtime_error for IO or numerical
// failures (CLI exit code 2).
std::vector<std::string> run_experiment(const RunConfig& config);

}  // namespace otoc
