#pragma once
// Amplitude encoding of the gaussian label vector.
//
// The squared labels form a discretised gaussian, so the state is built in
// two passes. First a surrogate distribution whose site weights are cell
// integrals of the continuous density; those are integrable in closed form
// through an erf polynomial, and the resulting state loads with the usual
// bisection descent (one rotation per occupied internal node). Second, a
// per-site conditional rotation trims the surrogate down to the exact
// labels; post-selecting the trim flag succeeds with probability
// sum(y^2) / sum(ytilde^2), which stays order one because the surrogate
// dominates the labels site by site.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "qvt/fft.hpp"
#include "qvt/labels.hpp"
#include "qvt/statevector.hpp"

namespace qvt {

/// Polynomial erf approximation (Abramowitz and Stegun 7.1.26), accurate to
/// 2.5e-5; extended to negative arguments as an odd function.
inline double erf_poly(double x) {
    if (x < 0.0) return -erf_poly(-x);
    constexpr double p = 0.47047;
    constexpr double a1 = 0.3480242, a2 = -0.0958798, a3 = 0.7478556;
    const double t = 1.0 / (1.0 + p * x);
    return 1.0 - (a1 * t + a2 * t * t + a3 * t * t * t) * std::exp(-x * x);
}

struct SurrogateLabels {
    std::vector<double> squared; // per-site weights, >= y_i^2
    double total = 0.0;          // sum of squared
    double s = 0.0;              // gaussian width c * sqrt(n)
};

/// Cell-integral upper envelope of the squared labels. The peak site keeps
/// its exact weight 1; a site at distance d >= 1 from the peak gets the
/// integral of exp(-2 u^2 / s^2) over [d-1, d], which dominates the point
/// value exp(-2 d^2 / s^2) because the density decreases away from zero.
inline SurrogateLabels surrogate_labels(std::size_t n, double c) {
    if (n == 0) throw std::invalid_argument("surrogate_labels: n must be positive");
    if (!(c > 0.0) || !std::isfinite(c))
        throw std::invalid_argument("surrogate_labels: width factor must be positive");
    SurrogateLabels out;
    out.s = c * std::sqrt(static_cast<double>(n));
    out.squared.assign(n, 0.0);
    const double scale = std::sqrt(std::numbers::pi) * out.s / (2.0 * std::numbers::sqrt2);
    const double k = std::numbers::sqrt2 / out.s;
    out.squared[0] = 1.0;
    for (std::size_t i = 1; i < n; ++i) {
        const double d = static_cast<double>(std::min(i, n - i));
        out.squared[i] = scale * (erf_poly(k * d) - erf_poly(k * (d - 1.0)));
    }
    for (double v : out.squared) out.total += v;
    return out;
}

struct PreparedState {
    StateVector state; // single register (data)
    int data_qubits = 0;
    int rotations = 0; // bisection rotations actually applied
};

/// Loads sqrt(squared / total) onto a data register by binary bisection:
/// walk the index tree from the root, and at every internal node whose
/// subtree carries weight rotate by the left/total weight ratio of its
/// children. Empty subtrees are skipped, so a full tree over 2^d leaves
/// costs 2^d - 1 rotations and a padded one costs fewer.
inline PreparedState prepare_surrogate_state(const SurrogateLabels& sur) {
    const std::size_t n = sur.squared.size();
    if (n == 0) throw std::invalid_argument("prepare_surrogate_state: empty surrogate");
    for (double v : sur.squared)
        if (!(v >= 0.0)) throw std::invalid_argument("prepare_surrogate_state: negative weight");
    if (!(sur.total > 0.0))
        throw std::invalid_argument("prepare_surrogate_state: zero total weight");

    const int d = std::max(1, ceil_log2(n));
    const std::size_t dim = std::size_t{1} << d;

    std::vector<std::vector<double>> sums(static_cast<std::size_t>(d) + 1);
    sums[d].assign(dim, 0.0);
    std::copy(sur.squared.begin(), sur.squared.end(), sums[d].begin());
    for (int level = d; level-- > 0;) {
        auto& up = sums[level];
        const auto& lo = sums[level + 1];
        up.assign(std::size_t{1} << level, 0.0);
        for (std::size_t j = 0; j < up.size(); ++j) up[j] = lo[2 * j] + lo[2 * j + 1];
    }

    PreparedState out;
    out.data_qubits = d;
    std::vector<double> amp{1.0};
    for (int level = 0; level < d; ++level) {
        std::vector<double> next(std::size_t{1} << (level + 1), 0.0);
        for (std::size_t j = 0; j < amp.size(); ++j) {
            if (amp[j] == 0.0 || !(sums[level][j] > 0.0)) continue;
            const double ratio = std::clamp(sums[level + 1][2 * j] / sums[level][j], 0.0, 1.0);
            next[2 * j] = amp[j] * std::sqrt(ratio);
            next[2 * j + 1] = amp[j] * std::sqrt(1.0 - ratio);
            ++out.rotations;
        }
        amp = std::move(next);
    }

    std::vector<cd> camp(dim);
    for (std::size_t i = 0; i < dim; ++i) camp[i] = amp[i];
    out.state = StateVector::from_amplitudes(QubitLayout({{"data", d}}), camp);
    return out;
}

struct RefineResult {
    StateVector state;                // (data) register, trim flag projected out
    double success_probability = 0.0; // P(flag = 1) = sum y^2 / sum ytilde^2
    int clamped = 0;                  // sites where the label exceeded the surrogate
};

/// Conditional rotation |i>|0> -> |i>(sqrt(1 - r^2)|0> + r|1>) with
/// r = y_i / ytilde_i, then post-selection on the flag. The surrogate
/// dominates the labels up to the erf polynomial error, so ratios above 1
/// are clamped and counted rather than trusted.
inline RefineResult refine_to_labels(const PreparedState& prep, const SurrogateLabels& sur,
                                     const LabelVector& labels) {
    const std::size_t n = sur.squared.size();
    if (labels.y.size() != n)
        throw std::invalid_argument("refine_to_labels: label length does not match surrogate");
    const auto& in = prep.state.amplitudes();
    const std::size_t dim = in.size();
    if (dim < n) throw std::invalid_argument("refine_to_labels: prepared state too small");

    QubitLayout lay({{"data", prep.data_qubits}, {"flag", 1}});
    std::vector<cd> amp(2 * dim, cd(0, 0));
    RefineResult out;
    for (std::size_t i = 0; i < dim; ++i) {
        double r = 0.0;
        if (i < n && sur.squared[i] > 0.0) {
            r = labels.y[i] / std::sqrt(sur.squared[i]);
            if (r > 1.0) {
                r = 1.0;
                ++out.clamped;
            }
        }
        amp[2 * i + 1] = in[i] * r;
        amp[2 * i] = in[i] * std::sqrt(std::max(0.0, 1.0 - r * r));
    }

    StateVector sv = StateVector::from_amplitudes(lay, amp);
    out.success_probability = sv.project("flag", 1);
    sv.remove_register("flag");
    out.state = std::move(sv);
    return out;
}

} // namespace qvt
