#pragma once
// Overlap estimation by the ancilla-controlled swap circuit.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>

#include "qvt/rng.hpp"
#include "qvt/statevector.hpp"

namespace qvt {

struct SwapTestEstimate {
    double p0 = 0.0;               // P(ancilla = 0) = (1 + |<a|b>|^2) / 2, exact
    double overlap_estimate = 0.0; // clip(2 f - 1, [0, 1]) with f the zero frequency
    double standard_error = 0.0;   // 2 sqrt(f (1 - f) / shots), 0 in projection mode
    std::size_t shots = 0;         // 0 means projection mode (read p0 exactly)
    std::size_t zeros = 0;         // sampled ancilla-0 count
};

/// Hadamard on a fresh ancilla, swap of the two register copies controlled
/// on it, Hadamard again, then measure the ancilla. With shots = 0 the zero
/// probability is read off the state (projection mode); with shots >= 1
/// that probability drives seeded Bernoulli draws.
inline SwapTestEstimate swap_test(const StateVector& a, const StateVector& b,
                                  std::size_t shots = 0, std::uint64_t seed = 0) {
    if (!(a.layout() == b.layout()))
        throw std::invalid_argument("swap_test: states must share one register layout");

    StateVector joint = tensor(StateVector::zero(QubitLayout({{"swap_anc", 1}})),
                               tensor(a.renamed("a_"), b.renamed("b_")));
    joint.hadamard_register("swap_anc");
    // the controlled swap of whole registers is the index transposition
    // (i, j) -> (j, i) on the ancilla = 1 half
    auto& amp = joint.amplitudes();
    const std::size_t dim = std::size_t{1} << a.layout().total_qubits();
    cd* anc1 = amp.data() + dim * dim;
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = i + 1; j < dim; ++j) std::swap(anc1[i * dim + j], anc1[j * dim + i]);
    joint.hadamard_register("swap_anc");

    SwapTestEstimate out;
    out.p0 = joint.marginal("swap_anc")[0];
    out.shots = shots;
    double f = out.p0;
    if (shots > 0) {
        auto eng = rng::engine(seed);
        std::size_t zeros = 0;
        for (std::size_t k = 0; k < shots; ++k)
            if (rng::uniform01(eng) < out.p0) ++zeros;
        out.zeros = zeros;
        f = static_cast<double>(zeros) / static_cast<double>(shots);
        out.standard_error = 2.0 * std::sqrt(f * (1.0 - f) / static_cast<double>(shots));
    }
    out.overlap_estimate = std::clamp(2.0 * f - 1.0, 0.0, 1.0);
    return out;
}

/// Shot count for target accuracy delta, from the estimator variance bound
/// 4 f (1 - f) / shots <= 1 / shots.
inline std::size_t swap_test_shots(double delta) {
    if (!(delta > 0.0) || delta >= 1.0)
        throw std::invalid_argument("swap_test_shots: delta must lie in (0, 1)");
    return static_cast<std::size_t>(std::ceil(4.0 / (delta * delta)));
}

} // namespace qvt
