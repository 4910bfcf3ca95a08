#include "otoc/experiments.hpp"

#include "otoc/csv.hpp"
#include "otoc/parallel.hpp"
#include "otoc/qpd_analysis.hpp"

#include "json.hpp"

#include <filesystem>
#include <fstream>

namespace otoc {

namespace {

namespace fs = std::filesystem;

struct ExperimentSetup {
    SpinChainParams params;
    QubitOperator hamiltonian;
    EigenDecomposition eig;
    QubitOperator w, v;
    DensityMatrix rho;
    std::optional<NoiseModel> noise;  // system qubits only
};

ExperimentSetup prepare(const RunConfig& config) {
    ExperimentSetup s;
    s.params = {config.n_qubits, config.j_coupling, config.h_over_j, config.g_over_j};
    s.hamiltonian = build_hamiltonian(s.params);
    s.eig = hermitian_eigendecompose(s.hamiltonian);
    std::tie(s.w, s.v) = butterfly_operators(s.params);
    s.rho = config.temperature_over_j
                ? gibbs_state(s.hamiltonian, *config.temperature_over_j * config.j_coupling)
                : infinite_temperature_state(config.n_qubits);
    if (config.t2_star_us) {
        s.noise = build_noise_model(*config.t2_star_us, config.n_qubits, 0);
    }
    return s;
}

void write_manifest(const RunConfig& config, const fs::path& dir,
                    const std::vector<std::string>& outputs) {
    nlohmann::json j;
    j["version"] = kVersion;
    j["experiment"] = to_string(config.experiment);
    j["n_qubits"] = config.n_qubits;
    j["j_coupling"] = config.j_coupling;
    j["h_over_j"] = config.h_over_j;
    j["g_over_j"] = config.g_over_j;
    if (config.t2_star_us) j["t2_star_us"] = *config.t2_star_us;
    else j["t2_star_us"] = nullptr;
    if (config.temperature_over_j) j["temperature_over_j"] = *config.temperature_over_j;
    else j["temperature_over_j"] = nullptr;
    j["t_max_us"] = config.resolved_t_max();
    j["dt_grid_us"] = config.dt_grid_us;
    j["dt_integration_us"] = config.dt_integration_us;
    std::vector<std::string> protocol_names;
    for (ProtocolKind p : config.protocols) protocol_names.push_back(to_string(p));
    j["protocols"] = protocol_names;
    j["sweep_points"] = config.sweep_points;
    j["threshold"] = config.resolved_threshold();
    j["output_dir"] = config.resolved_output_dir();
    j["worker_count"] = config.worker_count;
    j["outputs"] = outputs;

    std::ofstream out(dir / "manifest.json", std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write manifest in '" + dir.string() + "'");
    }
    out << j.dump(2) << '\n';
}

std::vector<double> grid_times(const RunConfig& config) {
    const TimeGrid grid = make_time_grid(config.resolved_t_max(), config.dt_grid_us);
    std::vector<double> times(std::size_t(grid.count));
    for (int i = 0; i < grid.count; ++i) times[std::size_t(i)] = grid.time(i);
    return times;
}

std::string run_otoc(const RunConfig& config, const ExperimentSetup& s, const fs::path& dir) {
    const std::vector<double> times = grid_times(config);
    std::vector<std::vector<Complex>> values(config.protocols.size(),
                                             std::vector<Complex>(times.size()));

    // The adjoint insertions of F = Tr(W(t)^dag V^dag W(t) V rho), carried
    // as Schroedinger operators by the weak protocol.
    const QubitOperator w_dag{s.w.entries.adjoint(), s.w.hermitian, s.w.unitary};
    const QubitOperator v_dag{s.v.entries.adjoint(), s.v.hermitian, s.v.unitary};

    parallel_for(times.size(), config.worker_count, [&](std::size_t i) {
        const double t = times[i];
        for (std::size_t p = 0; p < config.protocols.size(); ++p) {
            switch (config.protocols[p]) {
                case ProtocolKind::ideal:
                    values[p][i] = ideal_otoc(s.eig, s.w, s.v, s.rho, t);
                    break;
                case ProtocolKind::weak:
                    values[p][i] = weak_protocol_trace(w_dag, v_dag, s.w, s.v, s.rho, s.eig, t,
                                                       s.noise, config.dt_integration_us);
                    break;
                case ProtocolKind::interferometric:
                    values[p][i] = interferometric_otoc(s.w, s.v, s.rho, s.eig, t, s.noise,
                                                        config.dt_integration_us);
                    break;
                case ProtocolKind::clock:
                    values[p][i] = clock_otoc(s.w, s.v, s.rho, s.eig, t, s.noise,
                                              config.dt_integration_us);
                    break;
            }
        }
    });

    CsvTable table;
    table.header.push_back("t_us");
    for (ProtocolKind p : config.protocols) {
        table.header.push_back("re_F_" + to_string(p));
        table.header.push_back("im_F_" + to_string(p));
    }
    for (std::size_t i = 0; i < times.size(); ++i) {
        std::vector<std::string> row{format_double(times[i])};
        for (std::size_t p = 0; p < config.protocols.size(); ++p) {
            row.push_back(format_double(values[p][i].real()));
            row.push_back(format_double(values[p][i].imag()));
        }
        table.rows.push_back(std::move(row));
    }
    const fs::path path = dir / "otoc.csv";
    write_csv(path.string(), table);
    return path.string();
}

std::string run_qpd(const RunConfig& config, const ExperimentSetup& s, const fs::path& dir) {
    const std::vector<double> times = grid_times(config);
    std::vector<QPD> qpds(times.size());
    parallel_for(times.size(), config.worker_count, [&](std::size_t i) {
        qpds[i] = compute_qpd(s.rho, s.w, s.v, s.eig, times[i], s.noise,
                              config.dt_integration_us);
    });

    CsvTable table;
    table.header.push_back("t_us");
    for (int key = 0; key < 16; ++key) {
        std::string bits;
        for (int b = 3; b >= 0; --b) bits += char('0' + ((key >> b) & 1));
        table.header.push_back("re_p_" + bits);
        table.header.push_back("im_p_" + bits);
    }
    for (std::size_t i = 0; i < times.size(); ++i) {
        std::vector<std::string> row{format_double(times[i])};
        for (int key = 0; key < 16; ++key) {
            row.push_back(format_double(qpds[i].values[std::size_t(key)].real()));
            row.push_back(format_double(qpds[i].values[std::size_t(key)].imag()));
        }
        table.rows.push_back(std::move(row));
    }
    const fs::path path = dir / "qpd.csv";
    write_csv(path.string(), table);
    return path.string();
}

std::vector<std::string> timescale_row(const TimescaleReport& r) {
    auto cell = [](const std::optional<double>& v) {
        return v ? format_double(*v) : std::string();
    };
    return {format_double(r.h_over_j), cell(r.t_star),        cell(r.t_m),
            cell(r.t_z),               cell(r.ratio),         r.t_star ? "0" : "1",
            r.t_m ? "0" : "1",         r.t_z ? "0" : "1"};
}

const std::vector<std::string> kTimescaleHeader = {
    "h_over_j", "t_star_us", "t_m_us", "t_z_us", "ratio",
    "censored_star", "censored_m", "censored_z"};

std::vector<std::string> run_nonclassicality(const RunConfig& config, const ExperimentSetup& s,
                                             const fs::path& dir) {
    const TimeGrid grid = make_time_grid(config.resolved_t_max(), config.dt_grid_us);
    const NonclassicalitySeries series =
        nonclassicality_series(s.rho, s.w, s.v, s.eig, grid, s.noise,
                               config.dt_integration_us, config.worker_count);

    CsvTable table;
    table.header = {"t_us", "n_tilde"};
    for (std::size_t i = 0; i < series.times.size(); ++i) {
        table.rows.push_back({format_double(series.times[i]), format_double(series.values[i])});
    }
    const fs::path series_path = dir / "nonclassicality.csv";
    write_csv(series_path.string(), table);

    TimescaleReport report = extract_timescales(series, config.resolved_threshold());
    report.h_over_j = config.h_over_j;
    CsvTable ts;
    ts.header = kTimescaleHeader;
    ts.rows.push_back(timescale_row(report));
    const fs::path ts_path = dir / "timescales.csv";
    write_csv(ts_path.string(), ts);
    return {series_path.string(), ts_path.string()};
}

std::string run_sweep(const RunConfig& config, const fs::path& dir) {
    const SpinChainParams base{config.n_qubits, config.j_coupling, 0.0, config.g_over_j};
    std::vector<double> h_values(std::size_t(config.sweep_points));
    for (int k = 0; k < config.sweep_points; ++k) {
        h_values[std::size_t(k)] = 0.5 * double(k) / double(config.sweep_points - 1);
    }
    const SweepCase the_case{config.t2_star_us, config.temperature_over_j};
    const TimeGrid grid = make_time_grid(config.resolved_t_max(), config.dt_grid_us);
    const std::vector<SweepResult> results =
        sweep_h_over_j(base, h_values, {the_case}, grid, config.resolved_threshold(),
                       config.dt_integration_us, config.worker_count);

    CsvTable table;
    table.header = kTimescaleHeader;
    for (const SweepResult& cell : results) {
        table.rows.push_back(timescale_row(cell.report));
    }
    const fs::path path = dir / "timescales.csv";
    write_csv(path.string(), table);
    return path.string();
}

}  // namespace

std::vector<std::string> run_experiment(const RunConfig& config) {
    validate(config);
    const fs::path dir = config.resolved_output_dir();
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) {
        throw std::runtime_error("output directory '" + dir.string() + "' is not writable");
    }

    std::vector<std::string> outputs;
    switch (config.experiment) {
        case ExperimentKind::otoc:
            outputs.push_back(run_otoc(config, prepare(config), dir));
            break;
        case ExperimentKind::qpd:
            outputs.push_back(run_qpd(config, prepare(config), dir));
            break;
        case ExperimentKind::nonclassicality:
            outputs = run_nonclassicality(config, prepare(config), dir);
            break;
        case ExperimentKind::sweep:
            // Builds its own Hamiltonian per h value; no shared setup.
            outputs.push_back(run_sweep(config, dir));
            break;
    }
    write_manifest(config, dir, outputs);
    return outputs;
}

}  // namespace otoc
