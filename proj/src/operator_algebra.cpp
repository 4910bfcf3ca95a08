#include "otoc/operator_algebra.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <stdexcept>
#include <string>

namespace otoc {

bool is_hermitian(const Matrix& m, double tol) {
    if (m.rows() != m.cols()) return false;
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_unitary(const Matrix& m, double tol) {
    if (m.rows() != m.cols()) return false;
    Matrix gram = m * m.adjoint();
    gram -= Matrix::Identity(m.rows(), m.cols());
    return gram.norm() <= tol;
}

QubitOperator pauli(Axis axis) {
    Matrix m(2, 2);
    const Complex i(0.0, 1.0);
    switch (axis) {
        case Axis::x:
            m << 0, 1,
                 1, 0;
            break;
        case Axis::y:
            m << 0, -i,
                 i, 0;
            break;
        case Axis::z:
            m << 1, 0,
                 0, -1;
            break;
    }
    return {m, true, true};
}

QubitOperator identity_op(Eigen::Index dim) {
    return {Matrix::Identity(dim, dim), true, true};
}

QubitOperator tensor(const QubitOperator& a, const QubitOperator& b) {
    Matrix m = Eigen::kroneckerProduct(a.entries, b.entries);
    // Kronecker products preserve both structures factor-wise.
    return {std::move(m), a.hermitian && b.hermitian, a.unitary && b.unitary};
}

QubitOperator embed_at_site(const QubitOperator& op, int site, int n_qubits) {
    if (n_qubits < 1) {
        throw std::invalid_argument("embed_at_site: qubit count must be >= 1");
    }
    if (site < 1 || site > n_qubits) {
        throw std::invalid_argument("embed_at_site: site " + std::to_string(site) +
                                    " out of range [1, " + std::to_string(n_qubits) + "]");
    }
    if (op.dim() != 2) {
        throw std::invalid_argument("embed_at_site: operator must act on one qubit");
    }
    QubitOperator out = identity_op(1);
    for (int k = 1; k <= n_qubits; ++k) {
        out = tensor(out, k == site ? op : identity_op(2));
    }
    return out;
}

QubitOperator eigen_projector(const QubitOperator& op, int eigenvalue) {
    if (eigenvalue != 1 && eigenvalue != -1) {
        throw std::invalid_argument("eigen_projector: eigenvalue must be +1 or -1");
    }
    if (!is_hermitian(op.entries)) {
        throw std::invalid_argument("eigen_projector: operator is not Hermitian");
    }
    // Hermitian with spectrum in {+1,-1} is equivalent to op^2 = I.
    const Eigen::Index d = op.dim();
    Matrix square = op.entries * op.entries;
    if ((square - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() > kTol.spectrum) {
        throw std::invalid_argument("eigen_projector: operator spectrum is not contained in {+1, -1}");
    }
    Matrix proj = 0.5 * (Matrix::Identity(d, d) + double(eigenvalue) * op.entries);
    return {std::move(proj), true, false};
}

EigenDecomposition hermitian_eigendecompose(const QubitOperator& op) {
    if (!is_hermitian(op.entries)) {
        throw std::invalid_argument("hermitian_eigendecompose: operator is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(op.entries);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("hermitian_eigendecompose: eigensolver failed to converge");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

QubitOperator propagator(const EigenDecomposition& eig, double t) {
    const Complex minus_i(0.0, -1.0);
    Eigen::ArrayXcd phases = (minus_i * t * eig.eigenvalues.array().cast<Complex>()).exp();
    Matrix u = eig.eigenvectors * phases.matrix().asDiagonal() * eig.eigenvectors.adjoint();
    return {std::move(u), false, true};
}

}  // namespace otoc
