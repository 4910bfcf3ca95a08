#include "otoc/spin_model.hpp"

#include <stdexcept>

namespace otoc {

QubitOperator build_hamiltonian(const SpinChainParams& params) {
    if (params.n_qubits < 1) {
        throw std::invalid_argument("build_hamiltonian: n_qubits must be >= 1");
    }
    if (!(params.j_coupling > 0.0)) {
        throw std::invalid_argument("build_hamiltonian: j_coupling must be positive");
    }
    const int n = params.n_qubits;
    const double j = params.j_coupling;
    const double h = params.h_over_j * j;
    const double g = params.g_over_j * j;
    const Eigen::Index dim = Eigen::Index(1) << n;

    const QubitOperator sz = pauli(Axis::z);
    const QubitOperator sx = pauli(Axis::x);

    Matrix ham = Matrix::Zero(dim, dim);
    for (int i = 1; i < n; ++i) {
        ham -= j * (embed_at_site(sz, i, n).entries * embed_at_site(sz, i + 1, n).entries);
    }
    for (int i = 1; i <= n; ++i) {
        ham -= h * embed_at_site(sz, i, n).entries;
        ham -= g * embed_at_site(sx, i, n).entries;
    }
    return {std::move(ham), true, false};
}

DensityMatrix gibbs_state(const QubitOperator& h, double temperature) {
    if (!(temperature > 0.0)) {
        throw std::invalid_argument("gibbs_state: temperature must be positive");
    }
    EigenDecomposition eig = hermitian_eigendecompose(h);
    // Shift by the ground energy before exponentiating so the weights stay
    // in (0, 1] regardless of the spectrum's absolute scale.
    Eigen::ArrayXd weights = (-(eig.eigenvalues.array() - eig.eigenvalues.minCoeff()) / temperature).exp();
    weights /= weights.sum();
    Matrix rho = eig.eigenvectors * weights.matrix().asDiagonal() * eig.eigenvectors.adjoint();
    // Re-symmetrize to keep Hermiticity exact against rounding.
    rho = 0.5 * (rho + rho.adjoint()).eval();
    return rho;
}

DensityMatrix infinite_temperature_state(int n_qubits) {
    if (n_qubits < 1) {
        throw std::invalid_argument("infinite_temperature_state: n_qubits must be >= 1");
    }
    const Eigen::Index dim = Eigen::Index(1) << n_qubits;
    return Matrix::Identity(dim, dim) / double(dim);
}

std::pair<QubitOperator, QubitOperator> butterfly_operators(const SpinChainParams& params) {
    if (params.n_qubits < 2) {
        throw std::invalid_argument("butterfly_operators: need n_qubits >= 2 for distinct end sites");
    }
    const QubitOperator sz = pauli(Axis::z);
    return {embed_at_site(sz, 1, params.n_qubits),
            embed_at_site(sz, params.n_qubits, params.n_qubits)};
}

NoiseModel build_noise_model(double t2_star, int n_system, int n_ancilla) {
    if (!(t2_star > 0.0)) {
        throw std::invalid_argument("build_noise_model: t2_star must be positive");
    }
    if (n_system < 1 || n_ancilla < 0) {
        throw std::invalid_argument("build_noise_model: invalid qubit counts");
    }
    NoiseModel noise;
    noise.t2_star = t2_star;
    noise.gamma = 1.0 / (2.0 * t2_star);
    noise.n_total_qubits = n_system + n_ancilla;
    const QubitOperator sz = pauli(Axis::z);
    for (int site = 1; site <= noise.n_total_qubits; ++site) {
        noise.dephasing_sites.push_back(site);
        noise.lindblad_ops.push_back(embed_at_site(sz, site, noise.n_total_qubits));
    }
    return noise;
}

}  // namespace otoc
