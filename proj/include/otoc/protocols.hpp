#pragma once

// The out-of-time-ordered correlator F(t) = Tr(W(t)^dag V^dag W(t) V rho),
// W(t) = U(t)^dag W U(t), and the three measurement protocols that estimate
// it: weak-measurement (lab time 3t), interferometric (2t, one ancilla) and
// quantum-clock (4t, one ancilla). Each protocol optionally accrues
// dephasing during its timed legs; gates and readout are instantaneous and
// exact.

#include "otoc/dynamics.hpp"

#include <optional>

namespace otoc {

enum class ProtocolKind { ideal, weak, interferometric, clock };

// Laboratory time elapsed per unit of OTOC time t (the ideal correlator has
// no laboratory realization; factor 1 by convention).
int lab_time_factor(ProtocolKind kind);

struct OtocPoint {
    double t = 0.0;  // us
    Complex value;   // F(t), |F| <= 1 for unitary W, V
    ProtocolKind protocol = ProtocolKind::ideal;
    bool decoherent = false;
};

// Inner integration step used when a protocol runs with noise and the caller
// does not say otherwise.
inline constexpr double kDefaultDtIntegration = 0.005;

// Closed-form F(t) via the spectral propagator; the zero-noise oracle for
// every protocol below.
Complex ideal_otoc(const EigenDecomposition& eig, const QubitOperator& w,
                   const QubitOperator& v, const DensityMatrix& rho, double t);

// C(t) = <[W(t), V]^dag [W(t), V]> / 4 = (1 - Re F(t)) / 2 for unitary
// Hermitian W, V.
double commutator_square(const EigenDecomposition& eig, const QubitOperator& w,
                         const QubitOperator& v, const DensityMatrix& rho, double t);

// Weak-measurement protocol on the bare register: left-multiply by d, evolve
// forward t, left-multiply by c, evolve backward t, left-multiply by b,
// evolve forward t, left-multiply by a, trace. At zero noise this equals
// Tr(a(t) b c(t) d rho) with x(t) = U^dag x U. Noise (if any) dephases the
// system qubits only; lab time 3t.
Complex weak_protocol_trace(const QubitOperator& a, const QubitOperator& b,
                            const QubitOperator& c, const QubitOperator& d,
                            const DensityMatrix& rho, const EigenDecomposition& eig,
                            double t, const std::optional<NoiseModel>& noise,
                            double dt_integration = kDefaultDtIntegration);

// Interferometric protocol: one control ancilla in |+>, controlled-V on the
// |1> branch, forward t, W on the system, backward t, controlled-V on the
// |0> branch, then <sigma_x> + i <sigma_y> on the ancilla. The ancilla
// dephases alongside the system; lab time 2t.
Complex interferometric_otoc(const QubitOperator& w, const QubitOperator& v,
                             const DensityMatrix& rho, const EigenDecomposition& eig,
                             double t, const std::optional<NoiseModel>& noise,
                             double dt_integration = kDefaultDtIntegration);

// U_T(t) = U(t) (x) |0><0| + U(-t) (x) |1><1|, the propagator generated by
// H (x) sigma_z: the clock ancilla controls the direction of system time.
QubitOperator clock_propagator(const EigenDecomposition& eig, double t);

// Quantum-clock protocol: ancilla in |+>, controlled-V (|1> branch), evolve
// t under H (x) sigma_z, controlled-W (|1>), ancilla flip, evolve 2t, flip
// back, controlled-W (|0>), evolve t, controlled-V (|0>), ancilla readout.
// All 4t of lab evolution dephases system and ancilla.
Complex clock_otoc(const QubitOperator& w, const QubitOperator& v,
                   const DensityMatrix& rho, const EigenDecomposition& eig,
                   double t, const std::optional<NoiseModel>& noise,
                   double dt_integration = kDefaultDtIntegration);

}  // namespace otoc
