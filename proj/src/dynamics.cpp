#include "otoc/dynamics.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace otoc {

namespace {

// Bit mask (in computational-basis index space) selecting the dephasing
// sites. Site 1 is the most significant bit of the index.
std::uint64_t site_bits(const NoiseModel& noise) {
    std::uint64_t bits = 0;
    for (int site : noise.dephasing_sites) {
        bits |= std::uint64_t(1) << (noise.n_total_qubits - site);
    }
    return bits;
}

}  // namespace

long leg_step_count(double duration, double dt) {
    if (!(dt > 0.0)) {
        throw std::invalid_argument("evolve: dt_integration must be positive");
    }
    if (duration < 0.0) {
        throw std::invalid_argument("evolve: duration must be nonnegative");
    }
    const long steps = std::lround(duration / dt);
    if (std::abs(double(steps) * dt - duration) > kTol.grid) {
        throw std::invalid_argument("evolve: duration is not a whole number of integration steps");
    }
    return steps;
}

QubitOperator no_jump_operator(const NoiseModel& noise, double dt) {
    if (dt < 0.0) {
        throw std::invalid_argument("no_jump_operator: dt must be nonnegative");
    }
    // L_i^dag L_i = I for unitary sigma_z jumps, so the square root argument
    // is the scalar 1 - dt * sum_i gamma_i.
    const double total_rate = noise.gamma * double(noise.dephasing_sites.size());
    const double arg = 1.0 - dt * total_rate;
    if (arg < 0.0) {
        throw std::invalid_argument("no_jump_operator: dt too large, no-jump operator not PSD");
    }
    QubitOperator l0 = identity_op(noise.dim());
    l0.entries *= std::sqrt(arg);
    l0.unitary = false;
    return l0;
}

Eigen::ArrayXXd dephasing_mask(const NoiseModel& noise, double dt) {
    // With L_i = sigma_z on site i, (L_i M L_i)_{ab} = s_i(a) s_i(b) M_{ab}
    // where s_i(a) is the bit sign of site i in basis state a. Summing the
    // jump terms and the no-jump term gives per entry
    //   1 - k*gamma*dt + gamma*dt*(k - 2 d(a,b)) = 1 - 2 gamma dt d(a,b),
    // with k the number of dephasing sites and d(a,b) the number of those
    // sites on which a and b differ. This is exact, not a small-dt expansion
    // of the map itself.
    const Eigen::Index dim = noise.dim();
    const std::uint64_t bits = site_bits(noise);
    Eigen::ArrayXXd mask(dim, dim);
    for (Eigen::Index b = 0; b < dim; ++b) {
        for (Eigen::Index a = 0; a < dim; ++a) {
            const int differing = std::popcount((std::uint64_t(a) ^ std::uint64_t(b)) & bits);
            mask(a, b) = 1.0 - 2.0 * noise.gamma * dt * double(differing);
        }
    }
    return mask;
}

GeneralMatrix decoherent_step(const GeneralMatrix& m, const QubitOperator& u_dt,
                              const NoiseModel& noise, double dt) {
    if (m.rows() != u_dt.dim() || m.rows() != noise.dim()) {
        throw std::invalid_argument("decoherent_step: dimension mismatch");
    }
    // Validates the dt precondition (and matches the documented map).
    no_jump_operator(noise, dt);
    GeneralMatrix out = u_dt.entries * m * u_dt.entries.adjoint();
    out.array() *= dephasing_mask(noise, dt);
    return out;
}

GeneralMatrix evolve_with_step(GeneralMatrix m, const Matrix& u_dt,
                               const std::optional<NoiseModel>& noise,
                               double dt, long steps) {
    if (m.rows() != u_dt.rows()) {
        throw std::invalid_argument("evolve_with_step: dimension mismatch");
    }
    if (!noise || noise->gamma == 0.0) {
        if (steps == 0) return m;
        GeneralMatrix tmp(m.rows(), m.cols());
        const Matrix u_dag = u_dt.adjoint();
        for (long s = 0; s < steps; ++s) {
            tmp.noalias() = u_dt * m;
            m.noalias() = tmp * u_dag;
        }
        return m;
    }
    if (m.rows() != noise->dim()) {
        throw std::invalid_argument("evolve_with_step: noise model dimension mismatch");
    }
    no_jump_operator(*noise, dt);  // precondition: dt small enough
    const Eigen::ArrayXXd mask = dephasing_mask(*noise, dt);
    const Matrix u_dag = u_dt.adjoint();
    GeneralMatrix tmp(m.rows(), m.cols());
    for (long s = 0; s < steps; ++s) {
        tmp.noalias() = u_dt * m;
        m.noalias() = tmp * u_dag;
        m.array() *= mask;
    }
    return m;
}

GeneralMatrix evolve(const GeneralMatrix& m, const EigenDecomposition& eig,
                     const EvolutionConfig& config,
                     const std::optional<NoiseModel>& noise) {
    const double sign = config.direction == Direction::forward ? 1.0 : -1.0;
    if (config.duration == 0.0) {
        return m;
    }
    if (!noise || noise->gamma == 0.0) {
        // Closed leg: one exact propagator for the whole duration.
        const Matrix u = propagator(eig, sign * config.duration).entries;
        return u * m * u.adjoint();
    }
    const long steps = leg_step_count(config.duration, config.dt_integration);
    const Matrix u_dt = propagator(eig, sign * config.dt_integration).entries;
    return evolve_with_step(m, u_dt, noise, config.dt_integration, steps);
}

double convergence_probe(const DensityMatrix& state, const EigenDecomposition& eig,
                         const NoiseModel& noise, double t, double dt) {
    if (!(t > 0.0)) {
        throw std::invalid_argument("convergence_probe: t must be positive");
    }
    EvolutionConfig coarse{dt, Direction::forward, t};
    EvolutionConfig fine{dt / 2.0, Direction::forward, t};
    GeneralMatrix a = evolve(state, eig, coarse, noise);
    GeneralMatrix b = evolve(state, eig, fine, noise);
    return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace otoc
