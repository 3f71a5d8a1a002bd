#pragma once
// Seeded synthetic frame generation for the tracking experiments.
// Backgrounds are i.i.d. uniform [0, 0.5); object pixels are a fixed random
// pattern in [0.5, 1) drawn once per scene, so the object is brighter than
// anything behind it but not constant.

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qvt/rng.hpp"
#include "qvt/tracker.hpp"

namespace qvt {

inline std::vector<double> uniform_background(std::size_t len, std::mt19937_64& eng) {
    std::vector<double> px(len);
    for (double& v : px) v = rng::uniform(eng, 0.0, 0.5);
    return px;
}

inline std::vector<double> object_pattern(std::size_t len, std::mt19937_64& eng) {
    std::vector<double> px(len);
    for (double& v : px) v = rng::uniform(eng, 0.5, 1.0);
    return px;
}

inline void place_object(std::vector<double>& frame, const std::vector<double>& pattern,
                         std::size_t pos) {
    if (pos + pattern.size() > frame.size())
        throw std::invalid_argument("place_object: pattern overruns the frame");
    for (std::size_t i = 0; i < pattern.size(); ++i) frame[pos + i] = pattern[i];
}

/// One disappearance instance: a training frame with the object at
/// `object_pos`, a detection frame with the object shifted, and a detection
/// frame whose object pixels are fresh background draws instead. All three
/// frames show the same background field; pixels the object uncovers when it
/// moves or leaves are fresh draws, since the training frame never saw them.
struct DisappearanceScene {
    std::vector<double> train_frame;
    std::vector<double> exists_frame;
    std::vector<double> gone_frame;
    std::vector<double> pattern;
    std::size_t object_pos = 0;  // object start in the training frame
    std::size_t patch_start = 0; // fixed detection window start
    std::size_t patch_len = 0;
};

struct DisappearanceGeometry {
    std::size_t frame_len = 50;
    std::size_t patch_len = 20;
    std::size_t object_len = 10;
    long shift = 3;
};

inline DisappearanceScene make_disappearance_scene(const DisappearanceGeometry& g,
                                                   std::uint64_t seed) {
    if (g.object_len + 2 * static_cast<std::size_t>(g.shift > 0 ? g.shift : -g.shift) >
        g.patch_len)
        throw std::invalid_argument("disappearance scene: object and shift overrun the patch");
    if (g.patch_len > g.frame_len)
        throw std::invalid_argument("disappearance scene: patch overruns the frame");

    DisappearanceScene sc;
    sc.patch_len = g.patch_len;
    // center the object in the frame, center the patch on the object
    sc.object_pos = (g.frame_len - g.object_len) / 2;
    const std::size_t object_center = sc.object_pos + g.object_len / 2;
    sc.patch_start = object_center - g.patch_len / 2;
    const std::size_t shifted = static_cast<std::size_t>(
        static_cast<long>(sc.object_pos) + g.shift);
    if (shifted < sc.patch_start || shifted + g.object_len > sc.patch_start + g.patch_len)
        throw std::invalid_argument("disappearance scene: shifted object leaves the patch");

    auto eng = rng::engine(seed);
    sc.pattern = object_pattern(g.object_len, eng);
    sc.train_frame = uniform_background(g.frame_len, eng);
    place_object(sc.train_frame, sc.pattern, sc.object_pos);

    // the object moves off its training footprint, uncovering new background
    auto detect_base = sc.train_frame;
    for (std::size_t i = 0; i < g.object_len; ++i)
        detect_base[sc.object_pos + i] = rng::uniform(eng, 0.0, 0.5);
    sc.exists_frame = detect_base;
    place_object(sc.exists_frame, sc.pattern, shifted);
    sc.gone_frame = sc.exists_frame;
    for (std::size_t i = 0; i < g.object_len; ++i)
        sc.gone_frame[shifted + i] = rng::uniform(eng, 0.0, 0.5);
    return sc;
}

inline std::vector<double> extract_window(const std::vector<double>& frame, std::size_t start,
                                          std::size_t len) {
    if (start + len > frame.size())
        throw std::invalid_argument("extract_window: window overruns the frame");
    return std::vector<double>(frame.begin() + static_cast<long>(start),
                               frame.begin() + static_cast<long>(start + len));
}

/// 1D video with a fixed background and an object sliding by `shift` per
/// frame; used by the classical tracking demos and CLI fixtures.
inline std::vector<std::vector<double>> make_shift_video(std::size_t frame_len,
                                                         std::size_t object_len,
                                                         std::size_t start_pos, long shift,
                                                         std::size_t frames,
                                                         std::uint64_t seed) {
    auto eng = rng::engine(seed);
    const auto pattern = object_pattern(object_len, eng);
    const auto background = uniform_background(frame_len, eng);
    std::vector<std::vector<double>> video;
    video.reserve(frames);
    long pos = static_cast<long>(start_pos);
    for (std::size_t f = 0; f < frames; ++f, pos += shift) {
        if (pos < 0 || static_cast<std::size_t>(pos) + object_len > frame_len)
            throw std::invalid_argument("make_shift_video: object leaves the frame");
        auto frame = background;
        place_object(frame, pattern, static_cast<std::size_t>(pos));
        video.push_back(std::move(frame));
    }
    return video;
}

inline Image background_image(std::size_t rows, std::size_t cols, std::mt19937_64& eng) {
    Image img{rows, cols, uniform_background(rows * cols, eng)};
    return img;
}

inline Image object_image(std::size_t rows, std::size_t cols, std::mt19937_64& eng) {
    Image img{rows, cols, object_pattern(rows * cols, eng)};
    return img;
}

inline void place_object(Image& frame, const Image& pattern, std::size_t row, std::size_t col) {
    if (row + pattern.rows > frame.rows || col + pattern.cols > frame.cols)
        throw std::invalid_argument("place_object: pattern overruns the frame");
    for (std::size_t r = 0; r < pattern.rows; ++r)
        for (std::size_t c = 0; c < pattern.cols; ++c)
            frame.px[(row + r) * frame.cols + col + c] = pattern.px[r * pattern.cols + c];
}

inline void add_pixel_noise(Image& frame, double amplitude, std::mt19937_64& eng) {
    for (double& v : frame.px) v += rng::uniform(eng, 0.0, amplitude);
}

/// 2D video with a fixed background and the object visiting `schedule`
/// positions (row, col) one frame each.
inline std::vector<Image> make_path_video(std::size_t rows, std::size_t cols, const Image& object,
                                          const std::vector<std::pair<std::size_t, std::size_t>>&
                                              schedule,
                                          std::uint64_t seed) {
    auto eng = rng::engine(seed);
    const Image background = background_image(rows, cols, eng);
    std::vector<Image> video;
    video.reserve(schedule.size());
    for (const auto& [r, c] : schedule) {
        Image frame = background;
        place_object(frame, object, r, c);
        video.push_back(std::move(frame));
    }
    return video;
}

} // namespace qvt
