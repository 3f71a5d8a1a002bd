// Complex FFT used for circulant diagonalization and register Fourier
// transforms. Radix-2 iterative transform for power-of-two lengths and
// Bluestein's chirp-z reduction for everything else, so any n >= 1 runs in
// O(n log n).
#ifndef QVT_FFT_HPP
#define QVT_FFT_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace qvt {

using cd = std::complex<double>;

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

inline int ceil_log2(std::size_t n) {
    int b = 0;
    std::size_t p = 1;
    while (p < n) { p <<= 1; ++b; }
    return b;
}

namespace detail {

// In-place radix-2 Cooley-Tukey. sign=+1 uses kernel exp(+2*pi*i*jk/n).
inline void fft_pow2_inplace(cd* a, std::size_t n, int sign) {
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * std::numbers::pi / static_cast<double>(len);
        const cd wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cd w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                cd u = a[i + k];
                cd v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

// Arbitrary-length DFT via Bluestein: x_k -> sum_j x_j exp(sign*2*pi*i*jk/n).
inline std::vector<cd> bluestein(const std::vector<cd>& x, int sign) {
    const std::size_t n = x.size();
    const std::size_t m = next_pow2(2 * n + 1);
    // chirp w_j = exp(sign*pi*i*j^2/n); use j^2 mod 2n to keep angles exact
    std::vector<cd> chirp(n);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t j2 = (j * j) % (2 * n);
        const double ang = sign * std::numbers::pi * static_cast<double>(j2) / static_cast<double>(n);
        chirp[j] = cd(std::cos(ang), std::sin(ang));
    }
    std::vector<cd> a(m, cd(0, 0)), b(m, cd(0, 0));
    for (std::size_t j = 0; j < n; ++j) a[j] = x[j] * chirp[j];
    b[0] = std::conj(chirp[0]);
    for (std::size_t j = 1; j < n; ++j) b[j] = b[m - j] = std::conj(chirp[j]);
    fft_pow2_inplace(a.data(), m, +1);
    fft_pow2_inplace(b.data(), m, +1);
    for (std::size_t j = 0; j < m; ++j) a[j] *= b[j];
    fft_pow2_inplace(a.data(), m, -1);
    const double inv = 1.0 / static_cast<double>(m);
    std::vector<cd> out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = a[k] * inv * chirp[k];
    return out;
}

} // namespace detail

/// Unnormalized DFT of any length: out_k = sum_j in_j exp(sign*2*pi*i*jk/n).
inline std::vector<cd> fft(std::vector<cd> v, int sign) {
    if (v.empty()) throw std::invalid_argument("fft: empty input");
    if (sign != 1 && sign != -1) throw std::invalid_argument("fft: sign must be +1 or -1");
    if (is_pow2(v.size())) {
        detail::fft_pow2_inplace(v.data(), v.size(), sign);
        return v;
    }
    return detail::bluestein(v, sign);
}

inline std::vector<cd> fft(const std::vector<double>& v, int sign) {
    std::vector<cd> c(v.begin(), v.end());
    return fft(std::move(c), sign);
}

/// DFT with the positive kernel, the convention under which a circulant
/// built from generator x has eigenvalue spectrum dft_plus(x).
inline std::vector<cd> dft_plus(const std::vector<double>& v) { return fft(v, +1); }

/// Strided in-place power-of-two FFT; transforms the length-n sequence at
/// base[0], base[stride], ... Used for register-local Fourier transforms on
/// state vectors.
inline void fft_strided(cd* base, std::size_t n, std::size_t stride, int sign,
                        std::vector<cd>& scratch) {
    if (!is_pow2(n)) throw std::invalid_argument("fft_strided: length must be a power of two");
    if (stride == 1) {
        detail::fft_pow2_inplace(base, n, sign);
        return;
    }
    scratch.resize(n);
    for (std::size_t i = 0; i < n; ++i) scratch[i] = base[i * stride];
    detail::fft_pow2_inplace(scratch.data(), n, sign);
    for (std::size_t i = 0; i < n; ++i) base[i * stride] = scratch[i];
}

} // namespace qvt

#endif
