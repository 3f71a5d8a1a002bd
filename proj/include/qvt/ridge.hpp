// Ridge regression over (block) circulant training sets and the matching
// detection step. The default path solves w = (X'X + alpha I)^-1 X' y in the
// Fourier eigenbasis in O(n log n); the naive path assembles the dense
// normal equations and exists to cross-check the fast one.
#ifndef QVT_RIDGE_HPP
#define QVT_RIDGE_HPP

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "qvt/circulant.hpp"
#include "qvt/labels.hpp"

namespace qvt {

enum class TrainMode { fft, naive };

struct RidgeSolution {
    std::vector<double> w;
    double alpha = 0.0;
};

namespace detail {

inline void check_ridge_inputs(const SpectralData& spec, std::size_t ysize, double alpha) {
    if (ysize != spec.dim()) throw std::invalid_argument("train: label size does not match operator");
    if (!(alpha >= 0.0) || !std::isfinite(alpha))
        throw std::invalid_argument("train: alpha must be finite and >= 0");
    if (alpha == 0.0 && spec.singular)
        throw std::domain_error("train: alpha = 0 with a singular training matrix");
}

inline std::vector<double> ridge_fft(const std::vector<cd>& coeffs, std::size_t rows,
                                     std::size_t cols, const std::vector<double>& y, double alpha) {
    std::vector<cd> c(y.begin(), y.end());
    fourier_analysis_inplace(c, rows, cols);
    for (std::size_t m = 0; m < c.size(); ++m)
        c[m] *= std::conj(coeffs[m]) / (std::norm(coeffs[m]) + alpha);
    fourier_synthesis_inplace(c, rows, cols);
    std::vector<double> w(c.size());
    double imag_max = 0.0, mag_max = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        w[i] = c[i].real();
        imag_max = std::max(imag_max, std::abs(c[i].imag()));
        mag_max = std::max(mag_max, std::abs(c[i]));
    }
    if (imag_max > 1e-8 * std::max(1.0, mag_max))
        throw std::domain_error("train: solution has a non-real component");
    return w;
}

inline std::vector<double> ridge_naive(const Eigen::MatrixXd& x, const std::vector<double>& y,
                                       double alpha) {
    const Eigen::Index n = x.rows();
    Eigen::VectorXd yv(n);
    for (Eigen::Index i = 0; i < n; ++i) yv(i) = y[static_cast<std::size_t>(i)];
    const Eigen::MatrixXd a =
        x.transpose() * x + alpha * Eigen::MatrixXd::Identity(n, n);
    const Eigen::VectorXd wv = a.ldlt().solve(x.transpose() * yv);
    return std::vector<double>(wv.data(), wv.data() + n);
}

} // namespace detail

inline RidgeSolution train(const CirculantMatrix& x, const LabelVector& y, double alpha,
                           TrainMode mode = TrainMode::fft) {
    detail::check_ridge_inputs(spectral(x), y.y.size(), alpha);
    RidgeSolution sol;
    sol.alpha = alpha;
    sol.w = mode == TrainMode::fft ? detail::ridge_fft(x.spectrum(), x.dim(), 1, y.y, alpha)
                                   : detail::ridge_naive(x.dense(), y.y, alpha);
    return sol;
}

inline RidgeSolution train(const BlockCirculant& x, const LabelVector& y, double alpha,
                           TrainMode mode = TrainMode::fft) {
    detail::check_ridge_inputs(spectral(x), y.y.size(), alpha);
    if (y.rows != x.rows() || y.cols != x.cols())
        throw std::invalid_argument("train: label grid does not match operator shape");
    RidgeSolution sol;
    sol.alpha = alpha;
    sol.w = mode == TrainMode::fft
                ? detail::ridge_fft(x.spectrum(), x.rows(), x.cols(), y.y, alpha)
                : detail::ridge_naive(x.dense(), y.y, alpha);
    return sol;
}

/// Assembles the same solution from singular-value data,
///   w = sum_j beta_j * lambda_j * ||y|| / (lambda_j^2 + alpha) * v_j,
/// where beta_j = <u_j, y> / ||y||. This is the route the quantum pipeline
/// realizes, so it doubles as the analytic reference for it.
inline std::vector<double> ridge_from_spectrum(const SpectralData& spec,
                                               const std::vector<double>& y, double alpha) {
    detail::check_ridge_inputs(spec, y.size(), alpha);
    const std::size_t d = spec.dim();
    double ynorm2 = 0.0;
    for (double v : y) ynorm2 += v * v;
    const double ynorm = std::sqrt(ynorm2);
    std::vector<cd> w(d, cd(0, 0));
    for (std::size_t j = 0; j < d; ++j) {
        const std::vector<cd> u = spec.left_vector(j);
        const std::vector<cd> v = spec.right_vector(j);
        cd beta(0, 0);
        for (std::size_t i = 0; i < d; ++i) beta += std::conj(u[i]) * y[i];
        if (ynorm > 0.0) beta /= ynorm;
        const double gain = spec.lambda[j] * ynorm / (spec.lambda[j] * spec.lambda[j] + alpha);
        for (std::size_t i = 0; i < d; ++i) w[i] += beta * gain * v[i];
    }
    std::vector<double> out(d);
    for (std::size_t i = 0; i < d; ++i) out[i] = w[i].real();
    return out;
}

inline std::vector<double> detect(const CirculantMatrix& z, const RidgeSolution& sol) {
    if (sol.w.size() != z.dim()) throw std::invalid_argument("detect: weight size mismatch");
    return z.apply(sol.w);
}

inline std::vector<double> detect(const BlockCirculant& z, const RidgeSolution& sol) {
    if (sol.w.size() != z.dim()) throw std::invalid_argument("detect: weight size mismatch");
    return z.apply(sol.w);
}

/// Index of the response peak; ties resolve to the smallest index.
inline std::size_t argmax_response(const std::vector<double>& response) {
    if (response.empty()) throw std::invalid_argument("argmax_response: empty response");
    std::size_t best = 0;
    for (std::size_t i = 1; i < response.size(); ++i)
        if (response[i] > response[best]) best = i;
    return best;
}

} // namespace qvt

#endif
