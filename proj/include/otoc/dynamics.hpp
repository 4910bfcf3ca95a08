#pragma once

// Time evolution. Closed legs use the exact spectral propagator in a single
// step; open legs step the first-order jump/no-jump decomposition of the
// dephasing master equation,
//
//   m -> dt * sum_i gamma_i L_i u m u^dag L_i^dag + L_0 u m u^dag L_0^dag,
//   L_0 = sqrt(I - dt * sum_i gamma_i L_i^dag L_i),
//
// which is trace preserving by construction. Backward legs flip the sign of
// t only inside the unitary; decoherence accrues in both directions.

#include "otoc/operator_algebra.hpp"
#include "otoc/spin_model.hpp"

#include <optional>

namespace otoc {

enum class Direction { forward, backward };

struct EvolutionConfig {
    double dt_integration = 0.005;  // us, inner step of the open-system map
    Direction direction = Direction::forward;
    double duration = 0.0;  // us, must be a whole number of steps
};

// Number of integration steps in a leg of the given duration; throws when
// the duration is not a whole number of steps (within kTol.grid).
long leg_step_count(double duration, double dt);

// L_0 = sqrt(I - dt * sum_i gamma_i L_i^dag L_i). For sigma_z jump operators
// this is a scalar multiple of the identity. Throws when dt is so large that
// the operator under the square root stops being PSD.
QubitOperator no_jump_operator(const NoiseModel& noise, double dt);

// Elementwise damping factors of one jump/no-jump step in the computational
// basis: E(a,b) = 1 - 2 gamma dt * (# dephasing sites whose bits differ
// between a and b). For embedded sigma_z jumps, conjugating by every L_i and
// summing collapses exactly to this Schur mask (the derivation is in
// dynamics.cpp); the diagonal is exactly 1, so trace preservation is exact.
Eigen::ArrayXXd dephasing_mask(const NoiseModel& noise, double dt);

// One step of the update map above: unitary conjugation by u_dt followed by
// the dephasing mask. Valid for any carrier matrix (the map is linear), not
// just density matrices.
GeneralMatrix decoherent_step(const GeneralMatrix& m, const QubitOperator& u_dt,
                              const NoiseModel& noise, double dt);

// Repeats `steps` jump/no-jump steps with a fixed step unitary. Used by the
// protocol legs, including clock evolution where u_dt is not generated by
// the chain Hamiltonian alone. With no noise the caller should pass the
// whole-leg propagator and steps = 1.
GeneralMatrix evolve_with_step(GeneralMatrix m, const Matrix& u_dt,
                               const std::optional<NoiseModel>& noise,
                               double dt, long steps);

// One protocol leg under the chain Hamiltonian. Closed (no noise): a single
// exact propagator for the whole leg. Open: duration/dt jump/no-jump steps
// with u_dt = U(+/-dt). Throws when duration is not a whole number of steps.
GeneralMatrix evolve(const GeneralMatrix& m, const EigenDecomposition& eig,
                     const EvolutionConfig& config,
                     const std::optional<NoiseModel>& noise);

// Self-convergence probe: max entrywise difference between evolving `state`
// forward by t at step dt and at dt/2. Certifies an integration-step choice.
double convergence_probe(const DensityMatrix& state, const EigenDecomposition& eig,
                         const NoiseModel& noise, double t, double dt);

}  // namespace otoc
