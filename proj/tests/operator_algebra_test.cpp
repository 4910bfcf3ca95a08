#include "otoc/operator_algebra.hpp"

#include "doctest.h"

#include <unsupported/Eigen/MatrixFunctions>

#include <random>

using namespace otoc;

namespace {

// Seeded random Hermitian matrix; the independent eigendecomposition and
// propagator oracles below feed on these.
Matrix random_hermitian(Eigen::Index dim, std::mt19937& rng) {
    std::normal_distribution<double> dist(0.0, 1.0);
    Matrix m(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index j = 0; j < dim; ++j) m(i, j) = Complex(dist(rng), dist(rng));
    return 0.5 * (m + m.adjoint()).eval();
}

}  // namespace

TEST_CASE("pauli matrices match their definitions") {
    const QubitOperator z = pauli(Axis::z);
    CHECK(z.entries(0, 0) == Complex(1.0));
    CHECK(z.entries(1, 1) == Complex(-1.0));
    CHECK(z.entries(0, 1) == Complex(0.0));
    CHECK(z.hermitian);
    CHECK(z.unitary);

    const QubitOperator x = pauli(Axis::x);
    CHECK(x.entries(0, 1) == Complex(1.0));
    CHECK(x.entries(1, 0) == Complex(1.0));

    const QubitOperator y = pauli(Axis::y);
    CHECK(y.entries(0, 1) == Complex(0.0, -1.0));
    CHECK(y.entries(1, 0) == Complex(0.0, 1.0));

    // Involution and anticommutation, exactly representable.
    CHECK((x.entries * x.entries - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() == 0.0);
    CHECK((x.entries * z.entries + z.entries * x.entries).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("tensor products use the left factor as most significant") {
    const QubitOperator z = pauli(Axis::z);
    const QubitOperator x = pauli(Axis::x);

    CHECK(tensor(identity_op(2), identity_op(2)).entries.isIdentity(0.0));
    CHECK(tensor(z, x).dim() == 4);

    Matrix expected(4, 4);
    expected << 0, 1, 0, 0,
                1, 0, 0, 0,
                0, 0, 0, -1,
                0, 0, -1, 0;
    CHECK((tensor(z, x).entries - expected).cwiseAbs().maxCoeff() == 0.0);

    // sigma_z (x) |0><0| applied to |1>|0> (basis index 2) gives -|1>|0>.
    QubitOperator ket0{Matrix::Zero(2, 2), true, false};
    ket0.entries(0, 0) = 1.0;
    const Matrix op = tensor(z, ket0).entries;
    Eigen::VectorXcd basis = Eigen::VectorXcd::Zero(4);
    basis(2) = 1.0;
    CHECK(((op * basis) + basis).cwiseAbs().maxCoeff() == 0.0);

    CHECK(tensor(z, x).hermitian);
    CHECK(tensor(z, x).unitary);
}

TEST_CASE("embed_at_site places the operator at the right tensor slot") {
    const QubitOperator z = pauli(Axis::z);

    CHECK((embed_at_site(z, 1, 2).entries - tensor(z, identity_op(2)).entries)
              .cwiseAbs()
              .maxCoeff() == 0.0);
    CHECK((embed_at_site(z, 2, 2).entries - tensor(identity_op(2), z).entries)
              .cwiseAbs()
              .maxCoeff() == 0.0);

    // Site i controls bit (n - i) of the basis index: frozen diagonal signs
    // for n = 3.
    for (int site = 1; site <= 3; ++site) {
        const Matrix m = embed_at_site(z, site, 3).entries;
        for (int idx = 0; idx < 8; ++idx) {
            const int bit = (idx >> (3 - site)) & 1;
            CHECK(m(idx, idx) == Complex(bit == 0 ? 1.0 : -1.0));
        }
    }

    CHECK(embed_at_site(z, 3, 5).entries.trace() == Complex(0.0));
    CHECK(embed_at_site(z, 3, 5).dim() == 32);
    CHECK_THROWS_AS((void)embed_at_site(z, 0, 3), std::invalid_argument);
    CHECK_THROWS_AS((void)embed_at_site(z, 6, 5), std::invalid_argument);

    // Embedded Paulis: square to identity, traceless, projectors complete.
    for (int site = 1; site <= 5; ++site) {
        const QubitOperator p = embed_at_site(pauli(Axis::x), site, 5);
        CHECK((p.entries * p.entries - Matrix::Identity(32, 32)).cwiseAbs().maxCoeff() <= 1e-12);
        CHECK(std::abs(p.entries.trace()) <= 1e-12);
        const Matrix sum = eigen_projector(p, +1).entries + eigen_projector(p, -1).entries;
        CHECK((sum - Matrix::Identity(32, 32)).cwiseAbs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("eigen_projector builds idempotent +/-1 projectors") {
    const QubitOperator z = pauli(Axis::z);
    const Matrix plus = eigen_projector(z, +1).entries;
    const Matrix minus = eigen_projector(z, -1).entries;
    CHECK(plus(0, 0) == Complex(1.0));
    CHECK(plus(1, 1) == Complex(0.0));
    CHECK(minus(1, 1) == Complex(1.0));

    const QubitOperator w = embed_at_site(z, 1, 5);
    for (int sign : {+1, -1}) {
        const Matrix p = eigen_projector(w, sign).entries;
        CHECK((p * p - p).cwiseAbs().maxCoeff() <= 1e-12);
        CHECK(is_hermitian(p));
    }

    QubitOperator not_involution{0.5 * pauli(Axis::z).entries, true, false};
    CHECK_THROWS_AS((void)eigen_projector(not_involution, +1), std::invalid_argument);
    CHECK_THROWS_AS((void)eigen_projector(z, 2), std::invalid_argument);
}

TEST_CASE("hermitian_eigendecompose reconstructs its input") {
    const EigenDecomposition ex = hermitian_eigendecompose(pauli(Axis::x));
    CHECK(ex.eigenvalues(0) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(ex.eigenvalues(1) == doctest::Approx(1.0).epsilon(1e-12));

    // Analytic 2x2: -0.3 sz - 0.4 sx has eigenvalues -/+ sqrt(0.09 + 0.16).
    QubitOperator mixed{-0.3 * pauli(Axis::z).entries - 0.4 * pauli(Axis::x).entries, true, false};
    const EigenDecomposition em = hermitian_eigendecompose(mixed);
    CHECK(em.eigenvalues(0) == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(em.eigenvalues(1) == doctest::Approx(0.5).epsilon(1e-12));

    std::mt19937 rng(20240817);
    for (Eigen::Index dim : {2, 4, 8, 16, 32, 64}) {
        const Matrix m = random_hermitian(dim, rng);
        const EigenDecomposition eig = hermitian_eigendecompose({m, true, false});
        const Matrix rebuilt =
            eig.eigenvectors * eig.eigenvalues.asDiagonal() * eig.eigenvectors.adjoint();
        CHECK((rebuilt - m).norm() <= 1e-10);
        CHECK(is_unitary(eig.eigenvectors));
        // Ascending order.
        for (Eigen::Index i = 1; i < dim; ++i) {
            CHECK(eig.eigenvalues(i) >= eig.eigenvalues(i - 1));
        }
    }

    QubitOperator skew{pauli(Axis::x).entries * Complex(0.0, 1.0), false, false};
    CHECK_THROWS_AS((void)hermitian_eigendecompose(skew), std::invalid_argument);
}

TEST_CASE("propagator is the exact spectral exponential") {
    std::mt19937 rng(7151);

    // Single-qubit rotation: H = -g sx gives U(t) = cos(gt) I + i sin(gt) sx.
    const double g = 0.73;
    QubitOperator h{-g * pauli(Axis::x).entries, true, false};
    const EigenDecomposition eig = hermitian_eigendecompose(h);
    CHECK(propagator(eig, 0.0).entries.isIdentity(1e-14));
    for (double t : {0.4, 1.9, -2.6}) {
        const Matrix expected = std::cos(g * t) * Matrix::Identity(2, 2) +
                                Complex(0.0, 1.0) * std::sin(g * t) * pauli(Axis::x).entries;
        CHECK((propagator(eig, t).entries - expected).cwiseAbs().maxCoeff() <= 1e-13);
    }

    // Group property and unitarity on a bigger random generator.
    const Matrix hm = random_hermitian(16, rng);
    const EigenDecomposition e16 = hermitian_eigendecompose({hm, true, false});
    std::uniform_real_distribution<double> tdist(-10.0, 10.0);
    for (int rep = 0; rep < 5; ++rep) {
        const double t1 = tdist(rng), t2 = tdist(rng);
        const Matrix lhs = propagator(e16, t1).entries * propagator(e16, t2).entries;
        const Matrix rhs = propagator(e16, t1 + t2).entries;
        CHECK((lhs - rhs).norm() <= 1e-10);
        const Matrix round_trip = propagator(e16, t1).entries * propagator(e16, -t1).entries;
        CHECK((round_trip - Matrix::Identity(16, 16)).norm() <= 1e-10);
        CHECK(is_unitary(propagator(e16, t1).entries));
    }

    // Independent oracle: dense matrix exponential of -i H t.
    const Matrix h8 = random_hermitian(8, rng);
    const EigenDecomposition e8 = hermitian_eigendecompose({h8, true, false});
    const double t = 1.37;
    const Matrix direct = (Complex(0.0, -1.0) * t * h8).exp();
    CHECK((propagator(e8, t).entries - direct).norm() <= 1e-10);
}
