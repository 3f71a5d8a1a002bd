// Gaussian regression targets for circulant training sets. The label for
// shift zero sits at index 0 and the profile is mirrored so that small
// forward and backward shifts score alike:
//   y_i = exp(-(i-1)^2 / s^2)        for i <= floor((n+1)/2)   (1-based)
//   y_i = exp(-(n+1-i)^2 / s^2)      otherwise
// with bandwidth s = c * sqrt(n).
#ifndef QVT_LABELS_HPP
#define QVT_LABELS_HPP

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace qvt {

struct LabelVector {
    std::vector<double> y;
    std::size_t rows = 0;
    std::size_t cols = 1;
    double c = 0;
    double s = 0;     // bandwidth along rows (the only axis in 1D)
    double s_col = 0; // bandwidth along columns, 2D only

    double energy() const {
        double e = 0;
        for (double v : y) e += v * v;
        return e;
    }
};

inline LabelVector gaussian_labels(std::size_t n, double c = 0.5) {
    if (n < 2) throw std::invalid_argument("gaussian_labels: need n >= 2");
    if (!(c > 0)) throw std::invalid_argument("gaussian_labels: bandwidth constant must be positive");
    LabelVector lv;
    lv.rows = n;
    lv.cols = 1;
    lv.c = c;
    lv.s = c * std::sqrt(static_cast<double>(n));
    lv.y.resize(n);
    const std::size_t mid = (n + 1) / 2;
    for (std::size_t i = 1; i <= n; ++i) {
        const double d = (i <= mid) ? static_cast<double>(i - 1) : static_cast<double>(n + 1 - i);
        lv.y[i - 1] = std::exp(-(d * d) / (lv.s * lv.s));
    }
    return lv;
}

/// 2D targets as the outer product of the per-axis 1D profiles,
/// flattened row-major: y[(a,b)] = y_rows[a] * y_cols[b].
inline LabelVector gaussian_labels_2d(std::size_t n, std::size_t m, double c = 0.5) {
    const LabelVector yr = gaussian_labels(n, c);
    const LabelVector yc = gaussian_labels(m, c);
    LabelVector lv;
    lv.rows = n;
    lv.cols = m;
    lv.c = c;
    lv.s = yr.s;
    lv.s_col = yc.s;
    lv.y.resize(n * m);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < m; ++b) lv.y[a * m + b] = yr.y[a] * yc.y[b];
    return lv;
}

} // namespace qvt

#endif
