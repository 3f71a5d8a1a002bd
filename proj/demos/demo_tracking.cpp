// Tracks a bright bar drifting across a synthetic 1D scene and prints the
// estimated center per frame next to the ground truth.
#include <cstdio>

#include "qvt/rng.hpp"
#include "qvt/tracker.hpp"

int main() {
    const std::size_t frame_len = 64, object_len = 7, n_frames = 12;
    const std::ptrdiff_t start = 20, velocity = 2;

    auto eng = qvt::rng::engine(qvt::rng::derive(5, "demo-tracking"));
    std::vector<double> background(frame_len), object(object_len);
    for (double& v : background) v = qvt::rng::uniform(eng, 0.0, 0.3);
    for (double& v : object) v = qvt::rng::uniform(eng, 0.7, 1.0);

    std::vector<std::vector<double>> frames;
    for (std::size_t f = 0; f < n_frames; ++f) {
        std::vector<double> frame = background;
        const std::ptrdiff_t center = start + velocity * static_cast<std::ptrdiff_t>(f);
        for (std::size_t i = 0; i < object_len; ++i)
            frame[static_cast<std::size_t>(center - 3) + i] = object[i];
        frames.push_back(std::move(frame));
    }

    qvt::TrackConfig1D cfg;
    cfg.patch_len = 16;
    const auto trajectory = qvt::track(frames, start, cfg);

    std::printf("frame  tracked  truth\n");
    for (std::size_t f = 0; f < trajectory.size(); ++f)
        std::printf("%5zu  %7td  %5td\n", f, trajectory[f],
                    start + velocity * static_cast<std::ptrdiff_t>(f));
    return 0;
}
