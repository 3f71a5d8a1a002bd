// Classical correlation-filter tracker: per frame, train a ridge filter on
// the circulant shifts of the current patch, score the next frame's patch at
// the same location, and move by the decoded response peak. A response peak
// at index i means the content shifted by delta where i = (-delta) mod n,
// so delta = (n - i) mod n mapped into (-n/2, n/2].
#ifndef QVT_TRACKER_HPP
#define QVT_TRACKER_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qvt/circulant.hpp"
#include "qvt/labels.hpp"
#include "qvt/ridge.hpp"

namespace qvt {

struct Image {
    std::size_t rows = 0, cols = 0;
    std::vector<double> px;

    static Image filled(std::size_t r, std::size_t c, double v = 0.0) {
        Image im;
        im.rows = r;
        im.cols = c;
        im.px.assign(r * c, v);
        return im;
    }
    double& at(std::size_t r, std::size_t c) { return px[r * cols + c]; }
    double at(std::size_t r, std::size_t c) const { return px[r * cols + c]; }
};

inline std::ptrdiff_t decode_shift(std::size_t peak, std::size_t n) {
    std::ptrdiff_t delta = static_cast<std::ptrdiff_t>((n - peak) % n);
    if (delta > static_cast<std::ptrdiff_t>(n / 2)) delta -= static_cast<std::ptrdiff_t>(n);
    return delta;
}

/// Patch of length `len` centered at `center` (center lands at len/2).
inline std::vector<double> extract_patch(const std::vector<double>& frame, std::ptrdiff_t center,
                                         std::size_t len) {
    const std::ptrdiff_t start = center - static_cast<std::ptrdiff_t>(len / 2);
    if (start < 0 || start + static_cast<std::ptrdiff_t>(len) > static_cast<std::ptrdiff_t>(frame.size()))
        throw std::invalid_argument("extract_patch: window [" + std::to_string(start) + ", " +
                                    std::to_string(start + static_cast<std::ptrdiff_t>(len)) +
                                    ") leaves the frame");
    return std::vector<double>(frame.begin() + start, frame.begin() + start + static_cast<std::ptrdiff_t>(len));
}

inline std::vector<double> extract_patch(const Image& frame, std::pair<std::ptrdiff_t, std::ptrdiff_t> center,
                                         std::size_t prows, std::size_t pcols) {
    const std::ptrdiff_t r0 = center.first - static_cast<std::ptrdiff_t>(prows / 2);
    const std::ptrdiff_t c0 = center.second - static_cast<std::ptrdiff_t>(pcols / 2);
    if (r0 < 0 || c0 < 0 || r0 + static_cast<std::ptrdiff_t>(prows) > static_cast<std::ptrdiff_t>(frame.rows) ||
        c0 + static_cast<std::ptrdiff_t>(pcols) > static_cast<std::ptrdiff_t>(frame.cols))
        throw std::invalid_argument("extract_patch: window leaves the frame");
    std::vector<double> out(prows * pcols);
    for (std::size_t r = 0; r < prows; ++r)
        for (std::size_t c = 0; c < pcols; ++c)
            out[r * pcols + c] = frame.at(static_cast<std::size_t>(r0) + r, static_cast<std::size_t>(c0) + c);
    return out;
}

struct TrackConfig1D {
    std::size_t patch_len = 16;
    double labels_c = 0.5;
    double alpha = 0.01;
    TrainMode mode = TrainMode::fft;
};

/// Returns the tracked center per frame, starting with `start` for frame 0.
inline std::vector<std::ptrdiff_t> track(const std::vector<std::vector<double>>& frames,
                                         std::ptrdiff_t start, const TrackConfig1D& cfg) {
    if (frames.empty()) throw std::invalid_argument("track: no frames");
    const LabelVector y = gaussian_labels(cfg.patch_len, cfg.labels_c);
    std::vector<std::ptrdiff_t> trajectory{start};
    std::ptrdiff_t pos = start;
    for (std::size_t f = 0; f + 1 < frames.size(); ++f) {
        const auto x = extract_patch(frames[f], pos, cfg.patch_len);
        const auto filt = train(CirculantMatrix::from_generator(x), y, cfg.alpha, cfg.mode);
        const auto z = extract_patch(frames[f + 1], pos, cfg.patch_len);
        const auto response = detect(CirculantMatrix::from_generator(z), filt);
        pos += decode_shift(argmax_response(response), cfg.patch_len);
        trajectory.push_back(pos);
    }
    return trajectory;
}

struct TrackConfig2D {
    std::size_t patch_rows = 16, patch_cols = 16;
    double labels_c = 0.5;
    double alpha = 0.01;
    TrainMode mode = TrainMode::fft;
};

inline std::vector<std::pair<std::ptrdiff_t, std::ptrdiff_t>> track(
    const std::vector<Image>& frames, std::pair<std::ptrdiff_t, std::ptrdiff_t> start,
    const TrackConfig2D& cfg) {
    if (frames.empty()) throw std::invalid_argument("track: no frames");
    const LabelVector y = gaussian_labels_2d(cfg.patch_rows, cfg.patch_cols, cfg.labels_c);
    std::vector<std::pair<std::ptrdiff_t, std::ptrdiff_t>> trajectory{start};
    auto pos = start;
    for (std::size_t f = 0; f + 1 < frames.size(); ++f) {
        const auto x = extract_patch(frames[f], pos, cfg.patch_rows, cfg.patch_cols);
        const auto filt = train(BlockCirculant::from_generator(x, cfg.patch_rows, cfg.patch_cols), y,
                                cfg.alpha, cfg.mode);
        const auto z = extract_patch(frames[f + 1], pos, cfg.patch_rows, cfg.patch_cols);
        const auto response = detect(BlockCirculant::from_generator(z, cfg.patch_rows, cfg.patch_cols), filt);
        const std::size_t peak = argmax_response(response);
        pos.first += decode_shift(peak / cfg.patch_cols, cfg.patch_rows);
        pos.second += decode_shift(peak % cfg.patch_cols, cfg.patch_cols);
        trajectory.push_back(pos);
    }
    return trajectory;
}

} // namespace qvt

#endif
