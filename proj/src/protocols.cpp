#include "otoc/protocols.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <stdexcept>
#include <string>

namespace otoc {

namespace {

void require_nonnegative_time(double t, const char* who) {
    if (t < 0.0) {
        throw std::invalid_argument(std::string(who) + ": protocol time must be nonnegative");
    }
}

int qubit_count_of(Eigen::Index dim) {
    int n = 0;
    while ((Eigen::Index(1) << n) < dim) ++n;
    if ((Eigen::Index(1) << n) != dim) {
        throw std::invalid_argument("protocols: state dimension is not a power of two");
    }
    return n;
}

// Ancilla projectors and Paulis on the extended register (ancilla last).
struct AncillaOps {
    Matrix p0, p1, flip, read_x, read_y;
};

AncillaOps ancilla_ops(Eigen::Index system_dim) {
    const QubitOperator id_sys = identity_op(system_dim);
    const QubitOperator sx = pauli(Axis::x);
    const QubitOperator sy = pauli(Axis::y);
    Matrix ket0 = Matrix::Zero(2, 2);
    ket0(0, 0) = 1.0;
    Matrix ket1 = Matrix::Zero(2, 2);
    ket1(1, 1) = 1.0;
    AncillaOps ops;
    ops.p0 = Eigen::kroneckerProduct(id_sys.entries, ket0);
    ops.p1 = Eigen::kroneckerProduct(id_sys.entries, ket1);
    ops.flip = tensor(id_sys, sx).entries;
    ops.read_x = tensor(id_sys, sx).entries;
    ops.read_y = tensor(id_sys, sy).entries;
    return ops;
}

// rho (x) |+><+| with the ancilla appended as the least significant factor.
Matrix adjoin_plus_ancilla(const DensityMatrix& rho) {
    Matrix plus(2, 2);
    plus << 0.5, 0.5,
            0.5, 0.5;
    return Eigen::kroneckerProduct(rho, plus);
}

Matrix controlled_on_branch(const Matrix& op, const AncillaOps& anc, int branch) {
    // op acts on the system only when the ancilla is in |branch>.
    const Matrix op_ext = Eigen::kroneckerProduct(op, Matrix::Identity(2, 2));
    return branch == 0 ? (op_ext * anc.p0 + anc.p1).eval()
                       : (op_ext * anc.p1 + anc.p0).eval();
}

}  // namespace

int lab_time_factor(ProtocolKind kind) {
    switch (kind) {
        case ProtocolKind::ideal: return 1;
        case ProtocolKind::weak: return 3;
        case ProtocolKind::interferometric: return 2;
        case ProtocolKind::clock: return 4;
    }
    throw std::invalid_argument("lab_time_factor: unknown protocol kind");
}

Complex ideal_otoc(const EigenDecomposition& eig, const QubitOperator& w,
                   const QubitOperator& v, const DensityMatrix& rho, double t) {
    if (w.dim() != rho.rows() || v.dim() != rho.rows()) {
        throw std::invalid_argument("ideal_otoc: dimension mismatch");
    }
    const Matrix u = propagator(eig, t).entries;
    const Matrix wt = u.adjoint() * w.entries * u;
    return (wt.adjoint() * v.entries.adjoint() * wt * v.entries * rho).trace();
}

double commutator_square(const EigenDecomposition& eig, const QubitOperator& w,
                         const QubitOperator& v, const DensityMatrix& rho, double t) {
    const Matrix u = propagator(eig, t).entries;
    const Matrix wt = u.adjoint() * w.entries * u;
    const Matrix comm = wt * v.entries - v.entries * wt;
    return 0.25 * (comm.adjoint() * comm * rho).trace().real();
}

Complex weak_protocol_trace(const QubitOperator& a, const QubitOperator& b,
                            const QubitOperator& c, const QubitOperator& d,
                            const DensityMatrix& rho, const EigenDecomposition& eig,
                            double t, const std::optional<NoiseModel>& noise,
                            double dt_integration) {
    require_nonnegative_time(t, "weak_protocol_trace");
    const Eigen::Index dim = rho.rows();
    if (a.dim() != dim || b.dim() != dim || c.dim() != dim || d.dim() != dim) {
        throw std::invalid_argument("weak_protocol_trace: dimension mismatch");
    }
    const EvolutionConfig fwd{dt_integration, Direction::forward, t};
    const EvolutionConfig bwd{dt_integration, Direction::backward, t};
    GeneralMatrix m = d.entries * rho;
    m = evolve(m, eig, fwd, noise);
    m = c.entries * m;
    m = evolve(m, eig, bwd, noise);
    m = b.entries * m;
    m = evolve(m, eig, fwd, noise);
    m = a.entries * m;
    return m.trace();
}

Complex interferometric_otoc(const QubitOperator& w, const QubitOperator& v,
                             const DensityMatrix& rho, const EigenDecomposition& eig,
                             double t, const std::optional<NoiseModel>& noise,
                             double dt_integration) {
    require_nonnegative_time(t, "interferometric_otoc");
    const Eigen::Index dim = rho.rows();
    const int n_sys = qubit_count_of(dim);
    const AncillaOps anc = ancilla_ops(dim);

    // One ancilla, dephasing at the system rate alongside the system qubits.
    std::optional<NoiseModel> ext_noise;
    if (noise && noise->gamma > 0.0) {
        ext_noise = build_noise_model(noise->t2_star, n_sys, 1);
    }

    auto leg = [&](Matrix m, double duration, Direction dir) -> Matrix {
        const double sign = dir == Direction::forward ? 1.0 : -1.0;
        if (duration == 0.0) return m;
        if (!ext_noise) {
            const Matrix u = Eigen::kroneckerProduct(propagator(eig, sign * duration).entries,
                                                     Matrix::Identity(2, 2));
            return u * m * u.adjoint();
        }
        const long steps = leg_step_count(duration, dt_integration);
        const Matrix u_dt = Eigen::kroneckerProduct(propagator(eig, sign * dt_integration).entries,
                                                    Matrix::Identity(2, 2));
        return evolve_with_step(std::move(m), u_dt, ext_noise, dt_integration, steps);
    };

    const Matrix cv1 = controlled_on_branch(v.entries, anc, 1);
    const Matrix cv0 = controlled_on_branch(v.entries, anc, 0);
    const Matrix w_ext = Eigen::kroneckerProduct(w.entries, Matrix::Identity(2, 2));

    Matrix state = adjoin_plus_ancilla(rho);
    state = cv1 * state * cv1.adjoint();
    state = leg(std::move(state), t, Direction::forward);
    state = w_ext * state * w_ext.adjoint();
    state = leg(std::move(state), t, Direction::backward);
    state = cv0 * state * cv0.adjoint();

    const double x = (anc.read_x * state).trace().real();
    const double y = (anc.read_y * state).trace().real();
    // The surviving ancilla coherence carries Tr(K1 rho K0^dag) with
    // K0 = V W(t), K1 = W(t) V, which is exactly F(t); its real and
    // imaginary parts sit in <sigma_x> and <sigma_y> respectively.
    return Complex(x, y);
}

QubitOperator clock_propagator(const EigenDecomposition& eig, double t) {
    const Matrix u_fwd = propagator(eig, t).entries;
    const Matrix u_bwd = propagator(eig, -t).entries;
    Matrix ket0 = Matrix::Zero(2, 2);
    ket0(0, 0) = 1.0;
    Matrix ket1 = Matrix::Zero(2, 2);
    ket1(1, 1) = 1.0;
    Matrix u = Eigen::kroneckerProduct(u_fwd, ket0) + Eigen::kroneckerProduct(u_bwd, ket1);
    return {std::move(u), false, true};
}

Complex clock_otoc(const QubitOperator& w, const QubitOperator& v,
                   const DensityMatrix& rho, const EigenDecomposition& eig,
                   double t, const std::optional<NoiseModel>& noise,
                   double dt_integration) {
    require_nonnegative_time(t, "clock_otoc");
    const Eigen::Index dim = rho.rows();
    const int n_sys = qubit_count_of(dim);
    const AncillaOps anc = ancilla_ops(dim);

    std::optional<NoiseModel> ext_noise;
    if (noise && noise->gamma > 0.0) {
        ext_noise = build_noise_model(noise->t2_star, n_sys, 1);
    }

    // Clock evolution always runs forward in laboratory time; the ancilla
    // branch selects the sign of the system generator via H (x) sigma_z.
    auto leg = [&](Matrix m, double duration) -> Matrix {
        if (duration == 0.0) return m;
        if (!ext_noise) {
            const Matrix u = clock_propagator(eig, duration).entries;
            return u * m * u.adjoint();
        }
        const long steps = leg_step_count(duration, dt_integration);
        const Matrix u_dt = clock_propagator(eig, dt_integration).entries;
        return evolve_with_step(std::move(m), u_dt, ext_noise, dt_integration, steps);
    };

    const Matrix cv1 = controlled_on_branch(v.entries, anc, 1);
    const Matrix cw1 = controlled_on_branch(w.entries, anc, 1);
    const Matrix cw0 = controlled_on_branch(w.entries, anc, 0);
    const Matrix cv0 = controlled_on_branch(v.entries, anc, 0);

    Matrix state = adjoin_plus_ancilla(rho);
    state = cv1 * state * cv1.adjoint();
    state = leg(std::move(state), t);
    state = cw1 * state * cw1.adjoint();
    state = anc.flip * state * anc.flip.adjoint();
    state = leg(std::move(state), 2.0 * t);
    state = anc.flip * state * anc.flip.adjoint();
    state = cw0 * state * cw0.adjoint();
    state = leg(std::move(state), t);
    state = cv0 * state * cv0.adjoint();

    const double x = (anc.read_x * state).trace().real();
    const double y = (anc.read_y * state).trace().real();
    // The clock circuit realizes the branch operators with W conjugated the
    // opposite way in time, so its interference term is the complex
    // conjugate of F(t) for Hamiltonians real in the computational basis
    // (ours are). <sigma_x> still reads Re F; <sigma_y> flips sign.
    return Complex(x, -y);
}

}  // namespace otoc
