// Circulant and block-circulant operators diagonalized by the discrete
// Fourier transform. Row i of a circulant is the generator cyclically
// right-shifted i times, so X[i][j] = x[(j-i) mod n] and the eigenvalue at
// frequency m is sum_u x_u exp(+2*pi*i*mu/n) with Fourier-mode eigenvectors.
#ifndef QVT_CIRCULANT_HPP
#define QVT_CIRCULANT_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "qvt/fft.hpp"

namespace qvt {

inline constexpr std::size_t kDenseBudget = 4096;
inline constexpr double kSingularRatio = 1e-8;

struct OracleNormalization {
    std::vector<double> values;
    double shift = 0.0; // subtracted minimum
    double scale = 1.0; // dividing sum after the shift
};

/// Shifts a raw pixel vector by its minimum and scales it to unit sum, the
/// preprocessing that makes sqrt(x_i) amplitude encoding well defined. The
/// shift and scale are recorded so classical and quantum runs share one x.
inline OracleNormalization normalize_for_oracle(const std::vector<double>& x) {
    if (x.size() < 2) throw std::invalid_argument("normalize_for_oracle: need at least 2 entries");
    for (double v : x)
        if (!std::isfinite(v)) throw std::invalid_argument("normalize_for_oracle: non-finite entry");
    const double mn = *std::min_element(x.begin(), x.end());
    OracleNormalization out;
    out.shift = mn;
    out.values.resize(x.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        out.values[i] = x[i] - mn;
        sum += out.values[i];
    }
    if (sum <= 0.0)
        throw std::domain_error("normalize_for_oracle: vector is constant, no valid normalization");
    out.scale = sum;
    for (double& v : out.values) v /= sum;
    return out;
}

namespace detail {

inline void dft2_inplace(std::vector<cd>& grid, std::size_t rows, std::size_t cols, int sign) {
    if (grid.size() != rows * cols) throw std::invalid_argument("dft2: size mismatch");
    std::vector<cd> row(cols);
    for (std::size_t u = 0; u < rows; ++u) {
        std::copy(grid.begin() + u * cols, grid.begin() + (u + 1) * cols, row.begin());
        row = fft(std::move(row), sign);
        std::copy(row.begin(), row.end(), grid.begin() + u * cols);
    }
    std::vector<cd> col(rows);
    for (std::size_t q = 0; q < cols; ++q) {
        for (std::size_t u = 0; u < rows; ++u) col[u] = grid[u * cols + q];
        col = fft(std::move(col), sign);
        for (std::size_t u = 0; u < rows; ++u) grid[u * cols + q] = col[u];
    }
}

} // namespace detail

/// Unitary change to the Fourier eigenbasis of an n x m circulant structure
/// (cols = 1 for plain circulants): analysis computes the mode coefficients
/// c = F^dag v, synthesis restores v = F c. Both preserve the 2-norm.
inline void fourier_analysis_inplace(std::vector<cd>& v, std::size_t rows, std::size_t cols = 1) {
    detail::dft2_inplace(v, rows, cols, -1);
    const double inv = 1.0 / std::sqrt(static_cast<double>(rows * cols));
    for (cd& z : v) z *= inv;
}

inline void fourier_synthesis_inplace(std::vector<cd>& v, std::size_t rows, std::size_t cols = 1) {
    detail::dft2_inplace(v, rows, cols, +1);
    const double inv = 1.0 / std::sqrt(static_cast<double>(rows * cols));
    for (cd& z : v) z *= inv;
}

class CirculantMatrix {
  public:
    static CirculantMatrix from_generator(std::vector<double> x, bool normalize = false) {
        if (x.size() < 2) throw std::invalid_argument("CirculantMatrix: n must be >= 2");
        for (double v : x)
            if (!std::isfinite(v)) throw std::invalid_argument("CirculantMatrix: non-finite entry");
        CirculantMatrix c;
        if (normalize) {
            auto norm = normalize_for_oracle(x);
            c.gen_ = std::move(norm.values);
            c.shift_ = norm.shift;
            c.scale_ = norm.scale;
            c.normalized_ = true;
        } else {
            c.gen_ = std::move(x);
        }
        return c;
    }

    std::size_t dim() const { return gen_.size(); }
    const std::vector<double>& generator() const { return gen_; }
    bool normalized() const { return normalized_; }
    double shift() const { return shift_; }
    double scale() const { return scale_; }

    /// Eigenvalues in frequency order (index m = frequency).
    std::vector<cd> spectrum() const { return dft_plus(gen_); }

    std::vector<cd> apply(const std::vector<cd>& v) const { return apply_spectral(v, false); }
    std::vector<cd> apply_adjoint(const std::vector<cd>& v) const { return apply_spectral(v, true); }

    std::vector<double> apply(const std::vector<double>& v) const {
        std::vector<cd> c(v.begin(), v.end());
        c = apply_spectral(c, false);
        std::vector<double> out(c.size());
        for (std::size_t i = 0; i < c.size(); ++i) out[i] = c[i].real();
        return out;
    }

    Eigen::MatrixXd dense() const {
        const std::size_t n = dim();
        if (n > kDenseBudget)
            throw std::invalid_argument("CirculantMatrix::dense: dimension exceeds budget " +
                                        std::to_string(kDenseBudget));
        Eigen::MatrixXd m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m(i, j) = gen_[(j + n - i) % n];
        return m;
    }

  private:
    std::vector<cd> apply_spectral(const std::vector<cd>& v, bool adjoint) const {
        const std::size_t n = dim();
        if (v.size() != n) throw std::invalid_argument("CirculantMatrix::apply: size mismatch");
        std::vector<cd> hat = fft(v, -1);
        std::vector<cd> spec = spectrum();
        for (std::size_t m = 0; m < n; ++m) hat[m] *= adjoint ? std::conj(spec[m]) : spec[m];
        hat = fft(hat, +1);
        const double inv = 1.0 / static_cast<double>(n);
        for (cd& z : hat) z *= inv;
        return hat;
    }

    std::vector<double> gen_;
    double shift_ = 0.0;
    double scale_ = 1.0;
    bool normalized_ = false;
};

/// Block circulant with circulant blocks: block row i holds C(x_{(j-i) mod n})
/// so the flattened operator satisfies X[(a,b)][(c,d)] = x[(c-a) mod n][(d-b) mod m].
/// Diagonalized by the 2D DFT with eigenvalues at flattened frequency p*m+q.
class BlockCirculant {
  public:
    static BlockCirculant from_generator(std::vector<double> x, std::size_t n, std::size_t m,
                                         bool normalize = false) {
        if (n < 2 || m < 2) throw std::invalid_argument("BlockCirculant: n and m must be >= 2");
        if (x.size() != n * m) throw std::invalid_argument("BlockCirculant: generator size != n*m");
        for (double v : x)
            if (!std::isfinite(v)) throw std::invalid_argument("BlockCirculant: non-finite entry");
        BlockCirculant b;
        b.n_ = n;
        b.m_ = m;
        if (normalize) {
            auto norm = normalize_for_oracle(x);
            b.gen_ = std::move(norm.values);
            b.shift_ = norm.shift;
            b.scale_ = norm.scale;
            b.normalized_ = true;
        } else {
            b.gen_ = std::move(x);
        }
        return b;
    }

    std::size_t rows() const { return n_; }
    std::size_t cols() const { return m_; }
    std::size_t dim() const { return n_ * m_; }
    const std::vector<double>& generator() const { return gen_; }
    bool normalized() const { return normalized_; }
    double shift() const { return shift_; }
    double scale() const { return scale_; }

    /// 2D DFT of the generator, flattened as p*m+q.
    std::vector<cd> spectrum() const {
        std::vector<cd> hat(gen_.begin(), gen_.end());
        detail::dft2_inplace(hat, n_, m_, +1);
        return hat;
    }

    std::vector<cd> apply(const std::vector<cd>& v) const { return apply_spectral(v, false); }
    std::vector<cd> apply_adjoint(const std::vector<cd>& v) const { return apply_spectral(v, true); }

    std::vector<double> apply(const std::vector<double>& v) const {
        std::vector<cd> c(v.begin(), v.end());
        c = apply_spectral(c, false);
        std::vector<double> out(c.size());
        for (std::size_t i = 0; i < c.size(); ++i) out[i] = c[i].real();
        return out;
    }

    Eigen::MatrixXd dense() const {
        const std::size_t nm = dim();
        if (nm > kDenseBudget)
            throw std::invalid_argument("BlockCirculant::dense: dimension exceeds budget " +
                                        std::to_string(kDenseBudget));
        Eigen::MatrixXd out(nm, nm);
        for (std::size_t a = 0; a < n_; ++a)
            for (std::size_t b = 0; b < m_; ++b)
                for (std::size_t c = 0; c < n_; ++c)
                    for (std::size_t d = 0; d < m_; ++d)
                        out(a * m_ + b, c * m_ + d) = gen_[((c + n_ - a) % n_) * m_ + (d + m_ - b) % m_];
        return out;
    }

  private:
    std::vector<cd> apply_spectral(const std::vector<cd>& v, bool adjoint) const {
        if (v.size() != dim()) throw std::invalid_argument("BlockCirculant::apply: size mismatch");
        std::vector<cd> hat = v;
        detail::dft2_inplace(hat, n_, m_, -1);
        std::vector<cd> spec = spectrum();
        for (std::size_t i = 0; i < hat.size(); ++i)
            hat[i] *= adjoint ? std::conj(spec[i]) : spec[i];
        detail::dft2_inplace(hat, n_, m_, +1);
        const double inv = 1.0 / static_cast<double>(dim());
        for (cd& z : hat) z *= inv;
        return hat;
    }

    std::vector<double> gen_;
    std::size_t n_ = 0, m_ = 0;
    double shift_ = 0.0;
    double scale_ = 1.0;
    bool normalized_ = false;
};

/// Singular value decomposition data of a (block) circulant. Singular values
/// descend; ties keep ascending flattened frequency. Left and right singular
/// vectors are Fourier modes, materialized on demand: v_j is the mode at
/// freq[j] and u_j carries the extra eigenvalue phase so X v_j = lambda_j u_j.
struct SpectralData {
    std::size_t rows = 0, cols = 1;            // generator shape (cols=1 for 1D)
    std::vector<double> lambda;                // singular values, descending
    std::vector<cd> coeff;                     // DFT coefficient per entry
    std::vector<std::size_t> freq;             // flattened frequency index
    double lambda_max = 0.0, lambda_min = 0.0;
    double condition_number = 0.0;
    bool singular = false;

    std::size_t dim() const { return rows * cols; }

    std::vector<cd> right_vector(std::size_t j) const {
        check_index(j);
        return fourier_mode(freq[j]);
    }

    std::vector<cd> left_vector(std::size_t j) const {
        check_index(j);
        std::vector<cd> v = fourier_mode(freq[j]);
        const double lam = lambda[j];
        // phase convention: u_j = (coeff/|coeff|) v_j; for a zero eigenvalue
        // the left vector is chosen equal to the right one
        const cd phase = lam > 0.0 ? coeff[j] / lam : cd(1.0, 0.0);
        for (cd& z : v) z *= phase;
        return v;
    }

  private:
    void check_index(std::size_t j) const {
        if (j >= lambda.size()) throw std::invalid_argument("SpectralData: index out of range");
    }

    std::vector<cd> fourier_mode(std::size_t f) const {
        const std::size_t n = rows, m = cols;
        const std::size_t p = f / m, q = f % m;
        std::vector<cd> v(n * m);
        const double norm = 1.0 / std::sqrt(static_cast<double>(n * m));
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < m; ++b) {
                const double ang = 2.0 * std::numbers::pi *
                                   (static_cast<double>(p * a) / static_cast<double>(n) +
                                    static_cast<double>(q * b) / static_cast<double>(m));
                v[a * m + b] = cd(std::cos(ang), std::sin(ang)) * norm;
            }
        }
        return v;
    }
};

namespace detail {

inline SpectralData spectral_from_coeffs(std::vector<cd> coeffs, std::size_t rows, std::size_t cols) {
    SpectralData s;
    s.rows = rows;
    s.cols = cols;
    const std::size_t d = coeffs.size();
    std::vector<std::size_t> order(d);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> mag(d);
    for (std::size_t i = 0; i < d; ++i) mag[i] = std::abs(coeffs[i]);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return mag[a] > mag[b]; });
    s.lambda.resize(d);
    s.coeff.resize(d);
    s.freq.resize(d);
    for (std::size_t i = 0; i < d; ++i) {
        s.lambda[i] = mag[order[i]];
        s.coeff[i] = coeffs[order[i]];
        s.freq[i] = order[i];
    }
    s.lambda_max = s.lambda.front();
    s.lambda_min = s.lambda.back();
    s.singular = s.lambda_min < kSingularRatio * s.lambda_max;
    s.condition_number = s.lambda_min > 0.0 ? s.lambda_max / s.lambda_min
                                            : std::numeric_limits<double>::infinity();
    return s;
}

} // namespace detail

inline SpectralData spectral(const CirculantMatrix& x) {
    return detail::spectral_from_coeffs(x.spectrum(), x.dim(), 1);
}

inline SpectralData spectral(const BlockCirculant& x) {
    return detail::spectral_from_coeffs(x.spectrum(), x.rows(), x.cols());
}

} // namespace qvt

#endif
