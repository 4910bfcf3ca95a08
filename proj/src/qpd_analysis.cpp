#include "otoc/qpd_analysis.hpp"

#include "otoc/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace otoc {

TimeGrid make_time_grid(double t_max, double spacing) {
    if (!(spacing > 0.0)) {
        throw std::invalid_argument("make_time_grid: spacing must be positive");
    }
    if (t_max < 0.0) {
        throw std::invalid_argument("make_time_grid: t_max must be nonnegative");
    }
    const long intervals = std::lround(t_max / spacing);
    if (std::abs(double(intervals) * spacing - t_max) > kTol.grid) {
        throw std::invalid_argument("make_time_grid: t_max is not a whole number of spacings");
    }
    return {spacing, int(intervals) + 1};
}

QPD compute_qpd(const DensityMatrix& rho, const QubitOperator& w, const QubitOperator& v,
                const EigenDecomposition& eig, double t,
                const std::optional<NoiseModel>& noise, double dt_integration) {
    const QubitOperator pv[2] = {eigen_projector(v, +1), eigen_projector(v, -1)};
    const QubitOperator pw[2] = {eigen_projector(w, +1), eigen_projector(w, -1)};
    const EvolutionConfig fwd{dt_integration, Direction::forward, t};
    const EvolutionConfig bwd{dt_integration, Direction::backward, t};

    QPD qpd;
    qpd.t = t;
    qpd.decoherent = noise.has_value() && noise->gamma > 0.0;

    // The measurement sequence is P^V_{v1}, evolve, P^W_{w2}, evolve back,
    // P^V_{v2}, evolve, P^W_{w3}. The carrier after each evolution leg does
    // not depend on the projectors still to come, so the legs form a tree:
    // 2 + 4 + 8 folded evolutions serve all 16 outcome tuples.
    for (int a = 0; a < 2; ++a) {
        const GeneralMatrix m1 = evolve(pv[a].entries * rho, eig, fwd, noise);
        for (int b = 0; b < 2; ++b) {
            const GeneralMatrix m2 = evolve(pw[b].entries * m1, eig, bwd, noise);
            for (int c = 0; c < 2; ++c) {
                const GeneralMatrix m3 = evolve(pv[c].entries * m2, eig, fwd, noise);
                for (int d = 0; d < 2; ++d) {
                    qpd.values[qpd_index(a, b, c, d)] = (pw[d].entries * m3).trace();
                }
            }
        }
    }
    return qpd;
}

QPD direct_qpd(const DensityMatrix& rho, const QubitOperator& w, const QubitOperator& v,
               const EigenDecomposition& eig, double t) {
    const Matrix u = propagator(eig, t).entries;
    QubitOperator wt{u.adjoint() * w.entries * u, true, w.unitary};
    const QubitOperator pwt[2] = {eigen_projector(wt, +1), eigen_projector(wt, -1)};
    const QubitOperator pv[2] = {eigen_projector(v, +1), eigen_projector(v, -1)};

    QPD qpd;
    qpd.t = t;
    qpd.decoherent = false;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c)
                for (int d = 0; d < 2; ++d) {
                    qpd.values[qpd_index(a, b, c, d)] =
                        (pwt[d].entries * pv[c].entries * pwt[b].entries * pv[a].entries * rho)
                            .trace();
                }
    return qpd;
}

Complex otoc_from_qpd(const QPD& qpd) {
    Complex f = 0.0;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c)
                for (int d = 0; d < 2; ++d) {
                    f += qpd_sign(a) * qpd_sign(b) * qpd_sign(c) * qpd_sign(d) *
                         qpd.values[qpd_index(a, b, c, d)];
                }
    return f;
}

double total_nonclassicality(const QPD& qpd) {
    double sum = 0.0;
    for (const Complex& p : qpd.values) sum += std::abs(p);
    return sum - 1.0;
}

NonclassicalitySeries nonclassicality_series(const DensityMatrix& rho, const QubitOperator& w,
                                             const QubitOperator& v, const EigenDecomposition& eig,
                                             const TimeGrid& grid,
                                             const std::optional<NoiseModel>& noise,
                                             double dt_integration, int workers) {
    NonclassicalitySeries series;
    series.times.resize(std::size_t(grid.count));
    series.values.resize(std::size_t(grid.count));
    parallel_for(std::size_t(grid.count), workers, [&](std::size_t i) {
        const double t = grid.time(int(i));
        series.times[i] = t;
        series.values[i] =
            total_nonclassicality(compute_qpd(rho, w, v, eig, t, noise, dt_integration));
    });
    return series;
}

TimescaleReport extract_timescales(const NonclassicalitySeries& series,
                                   std::optional<double> threshold) {
    const std::size_t n = series.values.size();
    if (n < 2 || series.times.size() != n) {
        throw std::invalid_argument("extract_timescales: series needs at least two points");
    }
    const double spacing = series.times[1] - series.times[0];
    if (!(spacing > 0.0)) {
        throw std::invalid_argument("extract_timescales: times must be ascending");
    }
    for (std::size_t i = 1; i < n; ++i) {
        if (std::abs(series.times[i] - series.times[i - 1] - spacing) > kTol.grid) {
            throw std::invalid_argument("extract_timescales: grid spacing is not uniform");
        }
    }

    TimescaleReport report;
    report.threshold = threshold.value_or(spacing * spacing);
    if (!(report.threshold > 0.0)) {
        throw std::invalid_argument("extract_timescales: threshold must be positive");
    }
    const double thr = report.threshold;
    const auto& v = series.values;

    std::size_t i_star = n;
    for (std::size_t i = 0; i < n; ++i) {
        if (v[i] > thr) {
            i_star = i;
            break;
        }
    }
    if (i_star == n) return report;  // never deviates: everything censored
    report.t_star = series.times[i_star];

    // First local maximum after t_star: strictly above both neighbors, with
    // a flat run counting as one maximum located at its earliest index.
    std::size_t i_m = n;
    for (std::size_t i = i_star + 1; i + 1 < n; ++i) {
        if (!(v[i] > v[i - 1])) continue;
        std::size_t k = i;
        while (k + 1 < n && v[k + 1] == v[i]) ++k;
        if (k + 1 < n && v[k + 1] < v[i]) {
            i_m = i;
            break;
        }
        i = k;  // run ended rising (or hit the horizon): skip past it
    }
    if (i_m == n) return report;
    report.t_m = series.times[i_m];

    std::size_t i_z = n;
    for (std::size_t i = i_m + 1; i < n; ++i) {
        if (v[i] <= thr) {
            i_z = i;
            break;
        }
    }
    if (i_z == n) return report;
    report.t_z = series.times[i_z];

    report.ratio = (*report.t_z - *report.t_m) / (*report.t_m - *report.t_star);
    return report;
}

std::vector<SweepResult> sweep_h_over_j(const SpinChainParams& base,
                                        const std::vector<double>& h_values,
                                        const std::vector<SweepCase>& cases,
                                        const TimeGrid& grid,
                                        std::optional<double> threshold,
                                        double dt_integration, int workers) {
    if (h_values.empty()) {
        throw std::invalid_argument("sweep_h_over_j: h_values must be nonempty");
    }
    if (cases.empty()) {
        throw std::invalid_argument("sweep_h_over_j: cases must be nonempty");
    }
    std::vector<double> ordered = h_values;
    std::sort(ordered.begin(), ordered.end());

    std::vector<SweepResult> results;
    results.reserve(ordered.size() * cases.size());
    for (double h : ordered) {
        SpinChainParams params = base;
        params.h_over_j = h;
        const QubitOperator ham = build_hamiltonian(params);
        const EigenDecomposition eig = hermitian_eigendecompose(ham);
        const auto [w, v] = butterfly_operators(params);
        for (std::size_t ci = 0; ci < cases.size(); ++ci) {
            const SweepCase& c = cases[ci];
            const DensityMatrix rho =
                c.temperature_over_j
                    ? gibbs_state(ham, *c.temperature_over_j * params.j_coupling)
                    : infinite_temperature_state(params.n_qubits);
            std::optional<NoiseModel> noise;
            if (c.t2_star) noise = build_noise_model(*c.t2_star, params.n_qubits, 0);

            SweepResult cell;
            cell.h_over_j = h;
            cell.case_index = int(ci);
            cell.series = nonclassicality_series(rho, w, v, eig, grid, noise,
                                                 dt_integration, workers);
            cell.report = extract_timescales(cell.series, threshold);
            cell.report.h_over_j = h;
            results.push_back(std::move(cell));
        }
    }
    return results;
}

}  // namespace otoc
