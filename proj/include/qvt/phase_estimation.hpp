// Phase estimation against W ~ exp(-i H t), wired so the readout register
// holds a signed eigenvalue estimate: after H-layer, controlled powers
// W^(2^k) keyed to register bit k, and a forward QFT on the register, basis
// value r read as an s-bit two's-complement integer satisfies
//   r ~ round(lambda * t * 2^s / (2 pi)).
// The negative branch of an extended Hamiltonian therefore shows up as the
// wrap-around values r >= 2^(s-1). Exact inversion runs the same gates in
// reverse order.
#ifndef QVT_PHASE_ESTIMATION_HPP
#define QVT_PHASE_ESTIMATION_HPP

#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "qvt/hamiltonian.hpp"
#include "qvt/statevector.hpp"

namespace qvt {

/// Two's-complement read of an s-bit register value.
inline std::int64_t signed_register_value(std::uint64_t r, int bits) {
    const std::uint64_t half = std::uint64_t{1} << (bits - 1);
    return r < half ? static_cast<std::int64_t>(r)
                    : static_cast<std::int64_t>(r) - static_cast<std::int64_t>(std::uint64_t{1} << bits);
}

/// Eigenvalue estimate encoded by register value r.
inline double decode_eigenvalue(std::uint64_t r, int bits, double t) {
    return static_cast<double>(signed_register_value(r, bits)) * 2.0 * std::numbers::pi /
           (t * static_cast<double>(std::uint64_t{1} << bits));
}

/// Register value that nearest-rounds an eigenvalue; requires
/// |lambda| t / (2 pi) < 1/2 so nothing wraps.
inline std::uint64_t encode_eigenvalue(double lambda, int bits, double t) {
    const double n = static_cast<double>(std::uint64_t{1} << bits);
    const std::int64_t r = static_cast<std::int64_t>(std::llround(lambda * t * n / (2.0 * std::numbers::pi)));
    return static_cast<std::uint64_t>(r) & (static_cast<std::uint64_t>(n) - 1);
}

namespace detail {

inline void phase_estimate_gates(StateVector& st, const Evolver& ev, const std::string& readout,
                                 bool inverse) {
    const auto& reg = st.layout().reg(readout);
    std::vector<std::string> targets;
    int twidth = 0;
    for (const auto& r : st.layout().registers())
        if (r.name != readout) {
            targets.push_back(r.name);
            twidth += r.qubits;
        }
    if ((Eigen::Index{1} << twidth) != ev.dim())
        throw std::invalid_argument("phase_estimate: evolver dimension does not match the state");

    // controlled powers compound the step's unitarity slack; defects are
    // certified where the step is built, not here
    const double tol = std::max(kUnitarityTol,
                                4.0 * std::ldexp(ev.unitarity_tolerance(), reg.qubits));
    if (!inverse) {
        st.hadamard_register(readout);
        for (int k = 0; k < reg.qubits; ++k)
            st.apply_controlled_unitary(ev.power(std::uint64_t{1} << k), readout, k, targets, tol);
        st.qft(readout);
    } else {
        st.inverse_qft(readout);
        for (int k = reg.qubits - 1; k >= 0; --k)
            st.apply_controlled_unitary(ev.power(std::uint64_t{1} << k).adjoint(), readout, k, targets,
                                        tol);
        st.hadamard_register(readout);
    }
}

} // namespace detail

/// Appends a readout register named `eigen` (least significant position) and
/// runs forward phase estimation of the evolver over all existing registers.
inline StateVector signed_phase_estimate(const Evolver& ev, const StateVector& state,
                                         int precision_qubits) {
    if (precision_qubits < 1) throw std::invalid_argument("signed_phase_estimate: need >= 1 qubit");
    std::vector<Register> regs = state.layout().registers();
    regs.push_back({"eigen", precision_qubits});
    QubitLayout lay(regs);
    std::vector<cd> amps(lay.dim(), cd(0, 0));
    for (std::size_t i = 0; i < state.amplitudes().size(); ++i)
        amps[i << precision_qubits] = state.amplitudes()[i];
    StateVector out = StateVector::from_amplitudes(std::move(lay), std::move(amps));
    detail::phase_estimate_gates(out, ev, "eigen", false);
    return out;
}

/// Exact inverse of signed_phase_estimate on a state that still carries the
/// readout register; the register is uncomputed but not removed.
inline void inverse_signed_phase_estimate(const Evolver& ev, StateVector& state,
                                          const std::string& readout = "eigen") {
    detail::phase_estimate_gates(state, ev, readout, true);
}

} // namespace qvt

#endif
