#pragma once

// The coarse-grained Kirkwood-Dirac quasiprobability over the +/-1 outcome
// tuples (v1, w2, v2, w3) of the sequence V, W(t), V, W(t):
//
//   p_t(v1,w2,v2,w3) = Tr(P^{W(t)}_{w3} P^V_{v2} P^{W(t)}_{w2} P^V_{v1} rho),
//
// its OTOC contraction F = sum v1 w2 v2 w3 p, the total nonclassicality
// N(t) = sum |p| - 1, and the scrambling-witness timescales read off N(t).

#include "otoc/protocols.hpp"

#include <array>
#include <optional>
#include <vector>

namespace otoc {

// The 16 values are stored in the binary order abcd with v1 = (-1)^a,
// w2 = (-1)^b, v2 = (-1)^c, w3 = (-1)^d, i.e. index = 8a + 4b + 2c + d.
struct QPD {
    std::array<Complex, 16> values{};
    double t = 0.0;
    bool decoherent = false;
};

constexpr int qpd_index(int a, int b, int c, int d) { return 8 * a + 4 * b + 2 * c + d; }
constexpr double qpd_sign(int bit) { return bit == 0 ? 1.0 : -1.0; }

struct TimeGrid {
    double spacing = 0.1;  // us
    int count = 0;         // points at t = 0, spacing, ..., (count-1)*spacing

    double time(int i) const { return spacing * double(i); }
};

// Grid covering [0, t_max] inclusive; t_max must be a whole number of
// spacings (within kTol.grid).
TimeGrid make_time_grid(double t_max, double spacing);

struct NonclassicalitySeries {
    std::vector<double> times;   // ascending, uniform spacing
    std::vector<double> values;  // N(t) >= -1e-8 up to numerics
};

// Scrambling-witness times extracted from N(t): t_star = first time above
// the threshold, t_m = first strict local maximum after t_star, t_z = first
// time at or below the threshold after t_m. Events that never happen before
// the end of the series stay unset (censored).
struct TimescaleReport {
    std::optional<double> t_star;
    std::optional<double> t_m;
    std::optional<double> t_z;
    std::optional<double> ratio;  // (t_z - t_m)/(t_m - t_star), all present
    double threshold = 0.0;
    double h_over_j = 0.0;
};

// Measures all 16 quasiprobabilities through the weak-measurement protocol
// with projector insertions A = P^W_{w3}, B = P^V_{v2}, C = P^W_{w2},
// D = P^V_{v1}. The three evolution legs are shared across keys (the carrier
// after each leg does not depend on the later projector choices), so one
// call folds 14 legs instead of 48. Zero noise reproduces direct_qpd.
QPD compute_qpd(const DensityMatrix& rho, const QubitOperator& w, const QubitOperator& v,
                const EigenDecomposition& eig, double t,
                const std::optional<NoiseModel>& noise,
                double dt_integration = kDefaultDtIntegration);

// Literal closed-system evaluation: Heisenberg-evolve the W projectors and
// take the explicit five-factor trace. Oracle for compute_qpd at zero noise.
QPD direct_qpd(const DensityMatrix& rho, const QubitOperator& w, const QubitOperator& v,
               const EigenDecomposition& eig, double t);

// F = sum over keys of v1 w2 v2 w3 * p(key). The eigenvalues are +/-1, so
// the conjugations in the defining average are trivial.
Complex otoc_from_qpd(const QPD& qpd);

// N = sum |p(key)| - 1, returned raw (no clamping at zero).
double total_nonclassicality(const QPD& qpd);

// N(t) on every grid point via compute_qpd; each point is an independent
// folded simulation (no state reuse across grid points).
NonclassicalitySeries nonclassicality_series(const DensityMatrix& rho, const QubitOperator& w,
                                             const QubitOperator& v, const EigenDecomposition& eig,
                                             const TimeGrid& grid,
                                             const std::optional<NoiseModel>& noise,
                                             double dt_integration = kDefaultDtIntegration,
                                             int workers = 1);

// Threshold defaults to spacing^2 (in quasiprobability units) when not
// supplied; both the grid spacing and the threshold are configuration, not
// constants. Throws on an empty or non-uniform series.
TimescaleReport extract_timescales(const NonclassicalitySeries& series,
                                   std::optional<double> threshold = std::nullopt);

// One sweep cell: a noise setting (nullopt = closed) and an initial state,
// either Gibbs at temperature_over_j or infinite temperature (nullopt).
struct SweepCase {
    std::optional<double> t2_star;           // us; nullopt = no decoherence
    std::optional<double> temperature_over_j;  // nullopt = infinite temperature
};

struct SweepResult {
    double h_over_j = 0.0;
    int case_index = 0;  // position in the `cases` argument
    TimescaleReport report;
    NonclassicalitySeries series;
};

// Runs nonclassicality_series and extract_timescales for every
// (h/J, case) combination, g/J held at the base value. Results are ordered
// by h ascending, then by case order; the ordering and the values are
// deterministic and worker-count independent.
std::vector<SweepResult> sweep_h_over_j(const SpinChainParams& base,
                                        const std::vector<double>& h_values,
                                        const std::vector<SweepCase>& cases,
                                        const TimeGrid& grid,
                                        std::optional<double> threshold = std::nullopt,
                                        double dt_integration = kDefaultDtIntegration,
                                        int workers = 1);

}  // namespace otoc
