#pragma once
// Object disappearance detection and motion behavior matching, built on the
// quantum detection pipeline plus swap-test readout.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qvt/frames.hpp"
#include "qvt/labels.hpp"
#include "qvt/pipeline.hpp"
#include "qvt/ridge.hpp"
#include "qvt/rng.hpp"
#include "qvt/swap_test.hpp"
#include "qvt/tracker.hpp"

namespace qvt {

/// Uniform superposition over the first `window` basis states of a single
/// register; the reference "no structure" response.
inline StateVector uniform_window_state(const QubitLayout& lay, std::size_t window) {
    if (lay.registers().size() != 1)
        throw std::invalid_argument("uniform_window_state: expected a single register");
    if (window == 0 || window > lay.dim())
        throw std::invalid_argument("uniform_window_state: window outside the register");
    std::vector<cd> amps(lay.dim(), cd(0, 0));
    const double a = 1.0 / std::sqrt(static_cast<double>(window));
    for (std::size_t i = 0; i < window; ++i) amps[i] = a;
    return StateVector::from_amplitudes(lay, amps);
}

struct P1Result {
    double p1 = 0.0;
    bool disappeared = false;
    SwapTestEstimate estimate; // populated in sampled mode (shots > 0)
};

/// Squared overlap of a response state with the uniform window state. A
/// peaked response (object present) sits far from uniform; a structureless
/// one (object gone) sits close, so `disappeared` fires at p1 >= theta1.
inline P1Result p1_disappearance(const StateVector& response, std::size_t window,
                                 double theta1 = 0.75, std::size_t shots = 0,
                                 std::uint64_t seed = 0) {
    const StateVector uniform = uniform_window_state(response.layout(), window);
    P1Result out;
    if (shots == 0) {
        out.p1 = std::norm(inner(uniform, response));
    } else {
        out.estimate = swap_test(response, uniform, shots, seed);
        out.p1 = out.estimate.overlap_estimate;
    }
    out.disappeared = out.p1 >= theta1;
    return out;
}

struct DisappearanceConfig {
    DisappearanceGeometry geometry; // 50 px frame, 20 px patch, 10 px object, +3 shift
    std::size_t runs = 50;
    double theta1 = 0.75;
    double labels_c = 1.0;
    double alpha = 1.5;
    int precision_qubits = 12;
    double epsilon = 0.1;
    PhaseMode phase_mode = PhaseMode::full;
    EvolutionMode evolution = EvolutionMode::spectral;
    std::size_t shots = 0; // 0 = projection mode for P1
    std::uint64_t seed = 1;
    double kappa_cap = 60.0; // scenes whose operators condition worse are redrawn
    int max_redraws = 64;
};

struct DisappearanceRun {
    std::size_t run = 0;
    std::uint64_t scene_seed = 0;
    int redraws = 0;
    double kappa_train = 0.0;
    double p1_exists = 0.0;
    double p1_gone = 0.0;
    double p1_exists_classical = 0.0; // same overlap from the dense-solve response
    double p1_gone_classical = 0.0;
    bool exists_classified_ok = false;
    bool gone_classified_ok = false;
};

struct DisappearanceSummary {
    std::vector<DisappearanceRun> runs;
    std::size_t correct = 0; // out of 2 * runs.size()
    double max_p1_exists = 0.0;
    double min_p1_gone = 1.0;
    double min_margin = 1.0; // min |p1 - theta1| over every value
};

namespace detail {

inline double classical_p1(const std::vector<double>& response, std::size_t window) {
    double dot = 0.0, n2 = 0.0;
    for (std::size_t i = 0; i < window; ++i) {
        dot += response[i];
        n2 += response[i] * response[i];
    }
    if (n2 == 0.0) return 0.0;
    return dot * dot / (n2 * static_cast<double>(window));
}

} // namespace detail

/// One complete detection pass: train on the patch of the training frame,
/// detect on the same window of the query frame, strip the flag bookkeeping
/// and return the bare response-register state.
inline StateVector response_state(const CirculantMatrix& x, const StateVector& labels,
                                  const CirculantMatrix& z, const PipelineConfig& cfg) {
    auto trained = train_quantum(x, labels, cfg);
    auto detected = detect_quantum(z, trained.state, cfg);
    detected.state.project("sign", 0);
    detected.state.remove_register("sign");
    return std::move(detected.state);
}

inline DisappearanceSummary run_disappearance_experiment(const DisappearanceConfig& cfg) {
    if (cfg.runs == 0) throw std::invalid_argument("disappearance: need at least one run");
    DisappearanceSummary sum;
    sum.runs.reserve(cfg.runs);

    const std::size_t n = cfg.geometry.patch_len;
    const int d = std::max(1, ceil_log2(n));
    const auto labels = gaussian_labels(n, cfg.labels_c);
    std::vector<double> ypad(std::size_t{1} << d, 0.0);
    for (std::size_t i = 0; i < n; ++i) ypad[i] = labels.y[i];
    const auto ystate = StateVector::encode(QubitLayout({{"data", d}}), "data", ypad);

    PipelineConfig pcfg;
    pcfg.alpha = cfg.alpha;
    pcfg.precision_qubits = cfg.precision_qubits;
    pcfg.epsilon = cfg.epsilon;
    pcfg.phase_mode = cfg.phase_mode;
    pcfg.evolution = cfg.evolution;

    for (std::size_t run = 0; run < cfg.runs; ++run) {
        DisappearanceRun row;
        row.run = run;

        // redraw until every operator in the run conditions acceptably
        DisappearanceScene scene;
        CirculantMatrix X, Zexists, Zgone;
        for (int attempt = 0;; ++attempt) {
            if (attempt > cfg.max_redraws)
                throw std::runtime_error("disappearance: could not draw a well-conditioned scene");
            row.scene_seed = rng::derive(cfg.seed, "disappearance_scene", run,
                                         static_cast<std::uint64_t>(attempt));
            scene = make_disappearance_scene(cfg.geometry, row.scene_seed);
            X = CirculantMatrix::from_generator(
                extract_window(scene.train_frame, scene.patch_start, n));
            Zexists = CirculantMatrix::from_generator(
                extract_window(scene.exists_frame, scene.patch_start, n));
            Zgone = CirculantMatrix::from_generator(
                extract_window(scene.gone_frame, scene.patch_start, n));
            const double kx = spectral(X).condition_number;
            const double ke = spectral(Zexists).condition_number;
            const double kg = spectral(Zgone).condition_number;
            row.redraws = attempt;
            row.kappa_train = kx;
            if (std::max({kx, ke, kg}) <= cfg.kappa_cap) break;
        }

        const auto trained = train_quantum(X, ystate, pcfg);
        auto respond = [&](const CirculantMatrix& z) {
            auto det = detect_quantum(z, trained.state, pcfg);
            det.state.project("sign", 0);
            det.state.remove_register("sign");
            return std::move(det.state);
        };
        const auto exists_state = respond(Zexists);
        const auto gone_state = respond(Zgone);

        const auto p1e = p1_disappearance(exists_state, n, cfg.theta1, cfg.shots,
                                          rng::derive(cfg.seed, "disappearance_p1", run, 0));
        const auto p1g = p1_disappearance(gone_state, n, cfg.theta1, cfg.shots,
                                          rng::derive(cfg.seed, "disappearance_p1", run, 1));
        row.p1_exists = p1e.p1;
        row.p1_gone = p1g.p1;
        row.exists_classified_ok = !p1e.disappeared;
        row.gone_classified_ok = p1g.disappeared;

        const auto sol = train(X, labels, cfg.alpha);
        row.p1_exists_classical = detail::classical_p1(detect(Zexists, sol), n);
        row.p1_gone_classical = detail::classical_p1(detect(Zgone, sol), n);

        sum.correct += static_cast<std::size_t>(row.exists_classified_ok) +
                       static_cast<std::size_t>(row.gone_classified_ok);
        sum.max_p1_exists = std::max(sum.max_p1_exists, row.p1_exists);
        sum.min_p1_gone = std::min(sum.min_p1_gone, row.p1_gone);
        sum.min_margin = std::min({sum.min_margin, std::abs(row.p1_exists - cfg.theta1),
                                   std::abs(row.p1_gone - cfg.theta1)});
        sum.runs.push_back(row);
    }
    return sum;
}

struct MotionMatchConfig {
    std::size_t rows = 8, cols = 8;
    std::size_t object_rows = 2, object_cols = 2;
    // Z shaped template path, top row / diagonal / bottom row
    std::vector<std::pair<std::size_t, std::size_t>> positions = {
        {0, 0}, {0, 3}, {0, 6}, {3, 3}, {6, 0}, {6, 3}, {6, 6}};
    std::size_t off_path_frame = 3; // frame altered in the mismatch scenario
    std::pair<std::size_t, std::size_t> off_path_position = {5, 0};
    double theta2 = 0.9;
    double delta = 0.09; // sampled-mode accuracy; shots = ceil(4 / delta^2)
    std::size_t shots = 0; // 0 = projection mode
    double noise = 0.01;
    double labels_c = 1.0;
    double alpha = 0.1;
    int precision_qubits = 13;
    double epsilon = 0.2;
    PhaseMode phase_mode = PhaseMode::full;
    EvolutionMode evolution = EvolutionMode::spectral;
    std::uint64_t seed = 1;
    // random 8x8 spectra have 64 modes, so their condition numbers run well
    // above the 1D experiment's; the cap sits under the s=13 resolvable bound
    double kappa_cap = 300.0;
    int max_redraws = 64;
};

struct MotionScenario {
    std::vector<Image> actual;
    std::vector<Image> templates;
    int redraws = 0;
    double kappa_max = 0.0; // worst conditioning over every frame used
};

/// Template frames place the object along the configured path over a shared
/// background; the actual video follows the same path (plus sensor noise) or
/// breaks it at `off_path_frame`. Scenes whose frames condition worse than
/// `kappa_cap` are redrawn, since phase estimation cannot resolve them.
inline MotionScenario make_motion_scenario(const MotionMatchConfig& cfg, bool mismatched) {
    if (cfg.positions.size() < 2)
        throw std::invalid_argument("motion scenario: need at least two template positions");
    for (const auto& [r, c] : cfg.positions)
        if (r + cfg.object_rows > cfg.rows || c + cfg.object_cols > cfg.cols)
            throw std::invalid_argument("motion scenario: template position overruns the frame");
    auto schedule = cfg.positions;
    if (mismatched) {
        if (cfg.off_path_frame >= schedule.size())
            throw std::invalid_argument("motion scenario: off-path frame outside the schedule");
        if (cfg.off_path_position.first + cfg.object_rows > cfg.rows ||
            cfg.off_path_position.second + cfg.object_cols > cfg.cols)
            throw std::invalid_argument("motion scenario: off-path position overruns the frame");
        schedule[cfg.off_path_frame] = cfg.off_path_position;
    }

    const auto frame_kappa = [&](const Image& f) {
        return spectral(BlockCirculant::from_generator(f.px, cfg.rows, cfg.cols)).condition_number;
    };
    for (int attempt = 0;; ++attempt) {
        auto eng = rng::engine(rng::derive(cfg.seed, "motion_scene", 0,
                                           static_cast<std::uint64_t>(attempt)));
        const Image object = object_image(cfg.object_rows, cfg.object_cols, eng);
        const Image background = background_image(cfg.rows, cfg.cols, eng);

        MotionScenario sc;
        sc.redraws = attempt;
        for (std::size_t k = 0; k < cfg.positions.size(); ++k) {
            Image t = background;
            place_object(t, object, cfg.positions[k].first, cfg.positions[k].second);
            sc.kappa_max = std::max(sc.kappa_max, frame_kappa(t));
            sc.templates.push_back(std::move(t));

            Image a = background;
            place_object(a, object, schedule[k].first, schedule[k].second);
            auto neng = rng::engine(rng::derive(cfg.seed, "motion_noise", k,
                                                static_cast<std::uint64_t>(attempt)));
            add_pixel_noise(a, cfg.noise, neng);
            sc.kappa_max = std::max(sc.kappa_max, frame_kappa(a));
            sc.actual.push_back(std::move(a));
        }
        if (sc.kappa_max <= cfg.kappa_cap) return sc;
        if (attempt >= cfg.max_redraws)
            throw std::runtime_error("motion scenario: no admissible scene within the redraw budget");
    }
}

struct MotionMatchResult {
    double p2 = 1.0;
    bool matched = false;
    std::vector<double> component_overlaps; // per-frame factors entering p2
    std::vector<double> exact_overlaps;     // projection values, for diagnostics
};

/// Trains on the first actual frame, builds the response state of every
/// template and actual frame, and multiplies the per-frame overlaps into
/// P2 = |<psi_t|psi_a>|^2 without materializing the joint product state.
inline MotionMatchResult motion_match(const std::vector<Image>& actual,
                                      const std::vector<Image>& templates,
                                      const MotionMatchConfig& cfg) {
    const std::size_t K = templates.size();
    if (K < 2) throw std::invalid_argument("motion_match: need at least two template frames");
    if (actual.size() != K)
        throw std::invalid_argument("motion_match: frame schedule length does not match template");
    for (const auto& f : actual)
        if (f.rows != cfg.rows || f.cols != cfg.cols)
            throw std::invalid_argument("motion_match: frame geometry mismatch");

    const std::size_t n = cfg.rows * cfg.cols;
    const int dq = std::max(1, ceil_log2(n));
    const auto labels = gaussian_labels_2d(cfg.rows, cfg.cols, cfg.labels_c);
    std::vector<double> ypad(std::size_t{1} << dq, 0.0);
    for (std::size_t i = 0; i < n; ++i) ypad[i] = labels.y[i];
    const auto ystate = StateVector::encode(QubitLayout({{"data", dq}}), "data", ypad);

    PipelineConfig pcfg;
    pcfg.alpha = cfg.alpha;
    pcfg.precision_qubits = cfg.precision_qubits;
    pcfg.epsilon = cfg.epsilon;
    pcfg.phase_mode = cfg.phase_mode;
    pcfg.evolution = cfg.evolution;

    const auto X = BlockCirculant::from_generator(actual[0].px, cfg.rows, cfg.cols);
    const auto trained = train_quantum(X, ystate, pcfg);

    auto respond = [&](const Image& frame) {
        const auto Z = BlockCirculant::from_generator(frame.px, cfg.rows, cfg.cols);
        auto det = detect_quantum(Z, trained.state, pcfg);
        det.state.project("sign", 0);
        det.state.remove_register("sign");
        return std::move(det.state);
    };

    MotionMatchResult out;
    for (std::size_t k = 0; k < K; ++k) {
        const auto t = respond(templates[k]);
        const auto a = respond(actual[k]);
        const double exact = std::norm(inner(t, a));
        double factor = exact;
        if (cfg.shots > 0) {
            factor = swap_test(t, a, cfg.shots, rng::derive(cfg.seed, "motion_swap", k, 0))
                         .overlap_estimate;
        }
        out.exact_overlaps.push_back(exact);
        out.component_overlaps.push_back(factor);
        out.p2 *= factor;
    }
    out.matched = out.p2 >= cfg.theta2;
    return out;
}

} // namespace qvt
