#include "otoc/run_config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace otoc {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    std::size_t used = 0;
    double out = 0.0;
    try {
        out = std::stod(value, &used);
    } catch (const std::exception&) {
        throw ConfigError("config field '" + key + "': expected a number, got '" + value + "'");
    }
    if (used != value.size() || !std::isfinite(out)) {
        throw ConfigError("config field '" + key + "': expected a number, got '" + value + "'");
    }
    return out;
}

int parse_int(const std::string& key, const std::string& value) {
    const double d = parse_double(key, value);
    const int i = int(std::lround(d));
    if (double(i) != d) {
        throw ConfigError("config field '" + key + "': expected an integer, got '" + value + "'");
    }
    return i;
}

ProtocolKind parse_protocol(const std::string& key, const std::string& name) {
    if (name == "ideal") return ProtocolKind::ideal;
    if (name == "weak") return ProtocolKind::weak;
    if (name == "interferometric") return ProtocolKind::interferometric;
    if (name == "clock") return ProtocolKind::clock;
    throw ConfigError("config field '" + key + "': unknown protocol '" + name + "'");
}

}  // namespace

std::string to_string(ProtocolKind kind) {
    switch (kind) {
        case ProtocolKind::ideal: return "ideal";
        case ProtocolKind::weak: return "weak";
        case ProtocolKind::interferometric: return "interferometric";
        case ProtocolKind::clock: return "clock";
    }
    return "?";
}

std::string to_string(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::otoc: return "otoc";
        case ExperimentKind::qpd: return "qpd";
        case ExperimentKind::nonclassicality: return "nonclassicality";
        case ExperimentKind::sweep: return "sweep";
    }
    return "?";
}

std::string RunConfig::resolved_output_dir() const {
    if (!output_dir.empty()) return output_dir;
    if (const char* env = std::getenv("OTOC_LAB_OUTPUT_DIR"); env && *env) return env;
    return ".";
}

void apply_config_entry(RunConfig& config, const std::string& key, const std::string& value) {
    if (key == "n_qubits") {
        config.n_qubits = parse_int(key, value);
    } else if (key == "j_coupling") {
        config.j_coupling = parse_double(key, value);
    } else if (key == "h_over_j") {
        config.h_over_j = parse_double(key, value);
    } else if (key == "g_over_j") {
        config.g_over_j = parse_double(key, value);
    } else if (key == "t2_star_us") {
        if (value == "none") {
            config.t2_star_us.reset();
        } else {
            config.t2_star_us = parse_double(key, value);
        }
    } else if (key == "temperature_over_j") {
        if (value == "infinite") {
            config.temperature_over_j.reset();
        } else {
            config.temperature_over_j = parse_double(key, value);
        }
    } else if (key == "t_max_us") {
        config.t_max_us = parse_double(key, value);
    } else if (key == "dt_grid_us") {
        config.dt_grid_us = parse_double(key, value);
    } else if (key == "dt_integration_us") {
        config.dt_integration_us = parse_double(key, value);
    } else if (key == "protocols") {
        std::vector<ProtocolKind> parsed;
        std::stringstream ss(value);
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            if (!item.empty()) parsed.push_back(parse_protocol(key, item));
        }
        if (parsed.empty()) {
            throw ConfigError("config field 'protocols': expected a comma-separated list");
        }
        config.protocols = std::move(parsed);
    } else if (key == "experiment") {
        if (value == "otoc") config.experiment = ExperimentKind::otoc;
        else if (value == "qpd") config.experiment = ExperimentKind::qpd;
        else if (value == "nonclassicality") config.experiment = ExperimentKind::nonclassicality;
        else if (value == "sweep") config.experiment = ExperimentKind::sweep;
        else throw ConfigError("config field 'experiment': unknown experiment '" + value + "'");
    } else if (key == "sweep_points") {
        config.sweep_points = parse_int(key, value);
    } else if (key == "threshold") {
        config.threshold = parse_double(key, value);
    } else if (key == "output_dir") {
        config.output_dir = value;
    } else if (key == "worker_count") {
        config.worker_count = parse_int(key, value);
    } else {
        throw ConfigError("unknown configuration key '" + key + "'");
    }
}

void apply_config_file(RunConfig& config, const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string stripped = trim(line.substr(0, line.find('#')));
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config file '" + path + "' line " + std::to_string(lineno) +
                              ": expected key=value");
        }
        apply_config_entry(config, trim(stripped.substr(0, eq)), trim(stripped.substr(eq + 1)));
    }
}

void validate(const RunConfig& config) {
    if (config.n_qubits < 2) {
        throw ConfigError("config field 'n_qubits': must be >= 2, got " +
                          std::to_string(config.n_qubits));
    }
    if (config.n_qubits > 12) {
        throw ConfigError("config field 'n_qubits': dense simulation is limited to 12 qubits");
    }
    if (!(config.j_coupling > 0.0)) {
        throw ConfigError("config field 'j_coupling': must be positive");
    }
    if (config.t2_star_us && !(*config.t2_star_us > 0.0)) {
        throw ConfigError("config field 't2_star_us': must be positive or 'none'");
    }
    if (config.temperature_over_j && !(*config.temperature_over_j > 0.0)) {
        throw ConfigError("config field 'temperature_over_j': must be positive or 'infinite'");
    }
    if (!(config.resolved_t_max() > 0.0)) {
        throw ConfigError("config field 't_max_us': must be positive");
    }
    if (!(config.dt_grid_us > 0.0)) {
        throw ConfigError("config field 'dt_grid_us': must be positive");
    }
    if (!(config.dt_integration_us > 0.0)) {
        throw ConfigError("config field 'dt_integration_us': must be positive");
    }
    const double steps = config.dt_grid_us / config.dt_integration_us;
    if (std::abs(steps - std::round(steps)) > 1e-9 * steps) {
        throw ConfigError("config field 'dt_integration_us': must divide dt_grid_us");
    }
    if (config.protocols.empty()) {
        throw ConfigError("config field 'protocols': at least one protocol required");
    }
    if (config.experiment == ExperimentKind::sweep && config.sweep_points < 2) {
        throw ConfigError("config field 'sweep_points': must be >= 2 for a sweep");
    }
    if (config.threshold && !(*config.threshold > 0.0)) {
        throw ConfigError("config field 'threshold': must be positive");
    }
    if (config.worker_count < 1) {
        throw ConfigError("config field 'worker_count': must be >= 1");
    }
}

}  // namespace otoc
