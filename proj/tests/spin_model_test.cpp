#include "otoc/spin_model.hpp"

#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

using namespace otoc;

namespace {

std::vector<double> sorted_eigenvalues(const QubitOperator& h) {
    const EigenDecomposition eig = hermitian_eigendecompose(h);
    std::vector<double> vals(eig.eigenvalues.data(), eig.eigenvalues.data() + eig.eigenvalues.size());
    std::sort(vals.begin(), vals.end());
    return vals;
}

}  // namespace

TEST_CASE("two-site chain with no fields is the bare coupling term") {
    // H = -J sz sz has eigenvalues {-J, -J, +J, +J}: aligned pairs sit at -J.
    SpinChainParams params;
    params.n_qubits = 2;
    params.j_coupling = 0.7;
    params.h_over_j = 0.0;
    params.g_over_j = 0.0;
    const auto vals = sorted_eigenvalues(build_hamiltonian(params));
    REQUIRE(vals.size() == 4);
    CHECK(vals[0] == doctest::Approx(-0.7).epsilon(1e-12));
    CHECK(vals[1] == doctest::Approx(-0.7).epsilon(1e-12));
    CHECK(vals[2] == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(vals[3] == doctest::Approx(0.7).epsilon(1e-12));
}

TEST_CASE("single-site chain reduces to a field Hamiltonian") {
    // N = 1 removes the coupling term entirely: H = -h sz - g sx, whose
    // eigenvalues are +/- sqrt(h^2 + g^2) = +/- 0.5 J for (h, g) = (0.3, 0.4) J.
    SpinChainParams params;
    params.n_qubits = 1;
    params.j_coupling = 1.3;
    params.h_over_j = 0.3;
    params.g_over_j = 0.4;
    const auto vals = sorted_eigenvalues(build_hamiltonian(params));
    REQUIRE(vals.size() == 2);
    CHECK(vals[0] == doctest::Approx(-0.5 * 1.3).epsilon(1e-12));
    CHECK(vals[1] == doctest::Approx(0.5 * 1.3).epsilon(1e-12));
}

TEST_CASE("five-site Hamiltonians are real symmetric with the right size") {
    for (const double h_over_j : {0.0, 0.5}) {
        SpinChainParams params;
        params.h_over_j = h_over_j;
        const QubitOperator h = build_hamiltonian(params);
        CHECK(h.dim() == 32);
        CHECK(h.hermitian);
        CHECK(is_hermitian(h.entries, kTol.hermiticity));
        CHECK(h.entries.imag().cwiseAbs().maxCoeff() == 0.0);
        CHECK((h.entries - h.entries.transpose()).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("flipping the longitudinal field mirrors the spectrum") {
    // Global spin flip (product of sx) maps h -> -h and fixes J, g terms, so
    // the two spectra coincide.
    SpinChainParams plus;
    plus.h_over_j = 0.5;
    SpinChainParams minus = plus;
    minus.h_over_j = -0.5;
    const auto a = sorted_eigenvalues(build_hamiltonian(plus));
    const auto b = sorted_eigenvalues(build_hamiltonian(minus));
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-12));
}

TEST_CASE("gibbs state matches a hand Boltzmann weight on one site") {
    // H = diag(-J, +J) for h = J, g = 0, N = 1; at T = J the populations are
    // e^{+1} and e^{-1} over their sum.
    SpinChainParams params;
    params.n_qubits = 1;
    params.j_coupling = 0.25;
    params.h_over_j = 1.0;
    params.g_over_j = 0.0;
    const QubitOperator h = build_hamiltonian(params);
    const DensityMatrix rho = gibbs_state(h, params.j_coupling);
    const double z = std::exp(1.0) + std::exp(-1.0);
    CHECK(rho(0, 0).real() == doctest::Approx(std::exp(1.0) / z).epsilon(1e-12));
    CHECK(rho(1, 1).real() == doctest::Approx(std::exp(-1.0) / z).epsilon(1e-12));
    CHECK(std::abs(rho(0, 1)) == 0.0);
}

TEST_CASE("gibbs state tends to the maximally mixed state at high temperature") {
    SpinChainParams params;
    params.h_over_j = 0.5;
    const QubitOperator h = build_hamiltonian(params);
    const DensityMatrix rho = gibbs_state(h, 1e9 * params.j_coupling);
    const DensityMatrix mixed = infinite_temperature_state(params.n_qubits);
    CHECK((rho - mixed).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("gibbs state at the working temperature is a valid density matrix") {
    for (const double h_over_j : {0.0, 0.5}) {
        SpinChainParams params;
        params.h_over_j = h_over_j;
        const QubitOperator h = build_hamiltonian(params);
        const DensityMatrix rho = gibbs_state(h, params.j_coupling);  // T/J = 1
        CHECK(std::abs(rho.trace() - Complex(1.0)) < kTol.trace);
        CHECK(is_hermitian(rho, kTol.hermiticity));
        Eigen::SelfAdjointEigenSolver<Matrix> solver(rho);
        CHECK(solver.eigenvalues().minCoeff() >= kTol.positivity);
        // T/J = 1 is genuinely cold here: the state must be far from mixed.
        CHECK((rho - infinite_temperature_state(params.n_qubits)).cwiseAbs().maxCoeff() > 1e-3);
    }
}

TEST_CASE("infinite temperature state is I over dimension") {
    const DensityMatrix rho = infinite_temperature_state(5);
    CHECK(rho.rows() == 32);
    CHECK((rho - Matrix::Identity(32, 32) / 32.0).cwiseAbs().maxCoeff() == 0.0);
    CHECK(std::abs((rho * rho).trace()) == doctest::Approx(1.0 / 32.0).epsilon(1e-14));
}

TEST_CASE("butterfly operators sit on opposite ends of the chain") {
    SpinChainParams params;
    params.n_qubits = 2;
    const auto [w, v] = butterfly_operators(params);
    const QubitOperator z = pauli(Axis::z);
    CHECK((w.entries - tensor(z, identity_op(2)).entries).cwiseAbs().maxCoeff() == 0.0);
    CHECK((v.entries - tensor(identity_op(2), z).entries).cwiseAbs().maxCoeff() == 0.0);

    SpinChainParams five;
    const auto [w5, v5] = butterfly_operators(five);
    CHECK(w5.dim() == 32);
    CHECK(w5.hermitian);
    CHECK(w5.unitary);
    // Disjoint supports: they commute and square to the identity at t = 0.
    CHECK((w5.entries * v5.entries - v5.entries * w5.entries).cwiseAbs().maxCoeff() == 0.0);
    CHECK((w5.entries * w5.entries).isIdentity(0.0));
    CHECK((v5.entries * v5.entries).isIdentity(0.0));
}

TEST_CASE("noise model carries uniform dephasing on every site") {
    const NoiseModel noise = build_noise_model(130.0, 5, 0);
    CHECK(noise.t2_star == 130.0);
    CHECK(noise.gamma == doctest::Approx(1.0 / 260.0).epsilon(1e-15));
    CHECK(noise.n_total_qubits == 5);
    CHECK(noise.dim() == 32);
    REQUIRE(noise.dephasing_sites.size() == 5);
    REQUIRE(noise.lindblad_ops.size() == 5);
    for (int i = 0; i < 5; ++i) {
        CHECK(noise.dephasing_sites[std::size_t(i)] == i + 1);
        const Matrix expected = embed_at_site(pauli(Axis::z), i + 1, 5).entries;
        CHECK((noise.lindblad_ops[std::size_t(i)].entries - expected).cwiseAbs().maxCoeff() == 0.0);
    }

    // An appended ancilla dephases at the same rate as the system qubits.
    const NoiseModel ext = build_noise_model(130.0, 5, 1);
    CHECK(ext.n_total_qubits == 6);
    CHECK(ext.dephasing_sites.size() == 6);
    CHECK(ext.lindblad_ops.back().dim() == 64);

    CHECK_THROWS_AS(build_noise_model(0.0, 5, 0), std::invalid_argument);
    CHECK_THROWS_AS(build_noise_model(-2.0, 5, 0), std::invalid_argument);
    CHECK_THROWS_AS(build_noise_model(130.0, 0, 0), std::invalid_argument);
}
