#pragma once

// Dense multi-qubit operator algebra: Pauli construction, Kronecker
// embedding, +/-1 eigenprojectors and spectral propagators. Everything is
// small (dim <= 64), so we stay with dense Eigen matrices throughout.

#include <Eigen/Dense>

#include <complex>

namespace otoc {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

// Hilbert-space carriers. All three are plain dense complex matrices; the
// aliases record intent at interfaces (a density matrix is Hermitian,
// trace-one, PSD; a general matrix is any protocol intermediate such as a
// projector times a state).
using DensityMatrix = Matrix;
using GeneralMatrix = Matrix;

// Numeric tolerances used by validation and by the invariant tests. Kept in
// one record so every module (and test) agrees on what "equal" means.
struct ToleranceConfig {
    double hermiticity = 1e-12;     // entrywise |M - M^dag|
    double unitarity = 1e-10;       // Frobenius |M M^dag - I|
    double reconstruction = 1e-10;  // eigendecomposition round trip
    double spectrum = 1e-8;         // +/-1 spectrum check for projectors
    double trace = 1e-12;           // trace preservation per channel step
    double positivity = -1e-8;      // minimum eigenvalue floor for states
    double grid = 1e-9;             // duration vs. integration-step alignment
};
inline constexpr ToleranceConfig kTol{};

// A dim x dim operator on k qubits (dim = 2^k) with optional structure
// hints. The flags are set by the constructors below when the structure is
// known by construction; they are hints for validation, not load-bearing
// dispatch.
struct QubitOperator {
    Matrix entries;
    bool hermitian = false;
    bool unitary = false;

    Eigen::Index dim() const { return entries.rows(); }
};

enum class Axis { x, y, z };

// Standard 2x2 Pauli matrix; hermitian and unitary flags set.
QubitOperator pauli(Axis axis);

// Identity on a dim-dimensional space (dim need not be a power of two, but
// every caller in this library passes one).
QubitOperator identity_op(Eigen::Index dim);

// Kronecker product with `a` as the more significant factor. Ancillas are
// adjoined as the last (least significant) factor: tensor(system, ancilla).
QubitOperator tensor(const QubitOperator& a, const QubitOperator& b);

// Single-qubit operator placed at `site` (1-based; site 1 is the leftmost,
// most significant tensor factor) of an n-qubit register, identity elsewhere.
// Throws std::invalid_argument when site is out of range.
QubitOperator embed_at_site(const QubitOperator& op, int site, int n_qubits);

// Projector (I +/- op)/2 onto the +/-1 eigenspace of an involution. The
// input must be Hermitian with spectrum in {+1, -1} (checked via op^2 = I);
// throws std::invalid_argument otherwise.
QubitOperator eigen_projector(const QubitOperator& op, int eigenvalue);

struct EigenDecomposition {
    Eigen::VectorXd eigenvalues;  // ascending
    Matrix eigenvectors;          // unitary, columns matching eigenvalues
};

// Full spectral decomposition of a Hermitian operator. Throws
// std::invalid_argument for non-Hermitian input.
EigenDecomposition hermitian_eigendecompose(const QubitOperator& op);

// U(t) = V exp(-i lambda t) V^dag, exact per time point. Negative t gives
// the backward propagator, U(-t) = U(t)^dag.
QubitOperator propagator(const EigenDecomposition& eig, double t);

// Validation predicates used by tests and precondition checks.
bool is_hermitian(const Matrix& m, double tol = kTol.hermiticity);
bool is_unitary(const Matrix& m, double tol = kTol.unitarity);

}  // namespace otoc
