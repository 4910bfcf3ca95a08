#pragma once

// Mixed-field Ising chain, its thermal states, the end-of-chain butterfly
// operators, and the uniform sigma_z dephasing model.

#include "otoc/operator_algebra.hpp"

#include <utility>
#include <vector>

namespace otoc {

// Default coupling in angular-frequency units (rad/us), with hbar = 1 and
// k_B = 1 so that energies and rates share units. Calibrated so that chain
// dynamics (onset of operator spreading, first nonclassicality maximum,
// integrable recurrences at ~10-40 us) land on the same scale as dephasing
// with T2* of order 100 us; see the README for the operating point.
inline constexpr double kDefaultJCoupling = 0.25;

struct SpinChainParams {
    int n_qubits = 5;
    double j_coupling = kDefaultJCoupling;  // rad/us, > 0
    double h_over_j = 0.0;                  // longitudinal field ratio
    double g_over_j = 1.05;                 // transverse field ratio
};

// Uniform single-site sigma_z dephasing at rate gamma = 1/(2 T2*) on every
// listed site of the (system + ancilla) register.
struct NoiseModel {
    double t2_star = 0.0;               // us
    double gamma = 0.0;                 // 1/us, = 1/(2 t2_star)
    std::vector<int> dephasing_sites;   // 1-based sites in the full register
    std::vector<QubitOperator> lindblad_ops;  // embedded sigma_z per site
    int n_total_qubits = 0;

    Eigen::Index dim() const { return Eigen::Index(1) << n_total_qubits; }
};

// H = -J sum_i sz_i sz_{i+1} - h sum_i sz_i - g sum_i sx_i, open boundary.
// Real symmetric in the computational basis.
QubitOperator build_hamiltonian(const SpinChainParams& params);

// rho = exp(-H/T)/Z via eigendecomposition; `temperature` is in the same
// energy units as `h` (the caller converts a T/J ratio with its own J).
DensityMatrix gibbs_state(const QubitOperator& h, double temperature);

// Maximally mixed state I/2^n.
DensityMatrix infinite_temperature_state(int n_qubits);

// W = sigma_z on site 1, V = sigma_z on site N. They commute at t = 0.
std::pair<QubitOperator, QubitOperator> butterfly_operators(const SpinChainParams& params);

// Dephasing on all n_system + n_ancilla sites at the single rate 1/(2 T2*).
// Ancillas (appended as the least significant factors) dephase at the same
// rate as system qubits.
NoiseModel build_noise_model(double t2_star, int n_system, int n_ancilla);

}  // namespace otoc
