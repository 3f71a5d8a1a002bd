// qvt: command line driver for the circulant tracking simulator.
//
// Subcommands cover the classical tracker, the quantum train/detect
// pipeline, the two applications, the truncated-Taylor evolution
// certifier, and the label state loader. Every run writes its artifacts
// into --out together with a manifest.json holding the fully resolved
// configuration and FNV-1a content hashes, so identical config and seed
// reproduce byte identical outputs.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qvt/applications.hpp"
#include "qvt/hamiltonian.hpp"
#include "qvt/io.hpp"
#include "qvt/state_prep.hpp"
#include "qvt/tracker.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using namespace qvt;

/// Configuration problems exit with status 2; everything else exits 1.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Global {
    std::string config_path;
    std::string out_dir = "qvt-out";
    std::uint64_t seed = 1;
    std::string mode = "projection";
    std::uint64_t shots = 0;
    bool seed_given = false;
    bool mode_given = false;
    bool shots_given = false;
};

// ---- config plumbing ------------------------------------------------------

/// Defaults -> config file -> explicit command line flags, in that order.
/// The file must carry schema_version 1 and may only set keys the
/// subcommand defines; anything else is rejected by name.
json resolve_config(const Global& g, json resolved, const std::string& sub) {
    resolved["seed"] = 1;
    resolved["mode"] = "projection";
    resolved["shots"] = 0;
    if (!g.config_path.empty()) {
        std::ifstream in(g.config_path, std::ios::binary);
        if (!in) throw ConfigError("cannot open config " + g.config_path);
        json file = json::parse(in, nullptr, false);
        if (file.is_discarded()) throw ConfigError("config is not valid JSON: " + g.config_path);
        if (!file.is_object()) throw ConfigError("config root must be a JSON object");
        if (!file.contains("schema_version")) throw ConfigError("config is missing schema_version");
        const json& ver = file["schema_version"];
        if (!ver.is_number_integer() || ver.get<std::int64_t>() != 1)
            throw ConfigError("config schema_version must be 1");
        for (const auto& [key, value] : file.items()) {
            if (key == "schema_version") continue;
            if (!resolved.contains(key))
                throw ConfigError("unknown config key \"" + key + "\" for subcommand " + sub);
            const json& def = resolved[key];
            const bool both_num = def.is_number() && value.is_number();
            if (!both_num && def.type() != value.type())
                throw ConfigError("config key \"" + key + "\" has the wrong type");
            resolved[key] = value;
        }
    }
    if (g.seed_given) resolved["seed"] = g.seed;
    if (g.mode_given) resolved["mode"] = g.mode;
    if (g.shots_given) resolved["shots"] = g.shots;
    const auto mode = resolved["mode"].get<std::string>();
    if (mode != "projection" && mode != "sampled")
        throw ConfigError("mode must be projection or sampled");
    return resolved;
}

std::size_t as_index(const json& v, const char* what) {
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
        throw ConfigError(std::string(what) + " must be a nonnegative integer");
    return static_cast<std::size_t>(v.get<std::int64_t>());
}

std::size_t get_count(const json& cfg, const char* key, std::size_t lo = 1) {
    const std::size_t v = as_index(cfg.at(key), key);
    if (v < lo)
        throw ConfigError(std::string(key) + " must be at least " + std::to_string(lo));
    return v;
}

double get_pos(const json& cfg, const char* key) {
    if (!cfg.at(key).is_number()) throw ConfigError(std::string(key) + " must be a number");
    const double v = cfg.at(key).get<double>();
    if (!(v > 0.0) || !std::isfinite(v))
        throw ConfigError(std::string(key) + " must be positive and finite");
    return v;
}

double get_unit(const json& cfg, const char* key) {
    const double v = get_pos(cfg, key);
    if (!(v < 1.0)) throw ConfigError(std::string(key) + " must lie in (0, 1)");
    return v;
}

std::uint64_t get_seed(const json& cfg) {
    const json& v = cfg.at("seed");
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer() && v.get<std::int64_t>() >= 0)
        return static_cast<std::uint64_t>(v.get<std::int64_t>());
    throw ConfigError("seed must be a nonnegative integer");
}

int get_precision(const json& cfg, const char* key) {
    const auto s = get_count(cfg, key, 1);
    if (s > 16) throw ConfigError(std::string(key) + " above 16 qubits is not simulable here");
    return static_cast<int>(s);
}

EvolutionMode parse_evolution(const std::string& s) {
    if (s == "spectral") return EvolutionMode::spectral;
    if (s == "dense") return EvolutionMode::exact_dense;
    if (s == "lcu") return EvolutionMode::lcu;
    throw ConfigError("evolution must be spectral, dense, or lcu");
}

PhaseMode parse_phase(const std::string& s) {
    if (s == "full") return PhaseMode::full;
    if (s == "stub") return PhaseMode::exact_stub;
    throw ConfigError("phase_mode must be full or stub");
}

// ---- output plumbing ------------------------------------------------------

fs::path ensure_out(const Global& g) {
    fs::path out(g.out_dir);
    std::error_code ec;
    fs::create_directories(out, ec);
    if (ec) throw std::runtime_error("cannot create output directory " + out.string());
    return out;
}

void emit_manifest(const Global& g, const fs::path& out, const std::string& sub,
                   const json& resolved, const std::vector<std::string>& files,
                   const json& results = json::object()) {
    json m;
    m["schema_version"] = 1;
    m["subcommand"] = sub;
    m["resolved_config"] = resolved;
    json inputs = json::object();
    if (!g.config_path.empty()) {
        inputs["config_path"] = g.config_path;
        inputs["config_fnv1a64"] = io::hex64(io::fnv1a64_file(g.config_path));
    }
    m["inputs"] = inputs;
    json outputs = json::object();
    for (const auto& f : files) outputs[f] = io::hex64(io::fnv1a64_file((out / f).string()));
    m["outputs"] = outputs;
    m["results"] = results;
    io::write_text_file((out / "manifest.json").string(), m.dump(2) + "\n");
}

std::string fmt(double v) { return io::format_double(v); }

// ---- shared quantum helpers -----------------------------------------------

/// Reference (sign, data) state holding v on the given sign branch.
StateVector ref_state(const std::vector<double>& v, int data_qubits, int sign) {
    std::vector<cd> amps(std::size_t{1} << (data_qubits + 1), cd(0, 0));
    double n2 = 0.0;
    for (double x : v) n2 += x * x;
    const double inv = 1.0 / std::sqrt(n2);
    for (std::size_t i = 0; i < v.size(); ++i)
        amps[(static_cast<std::size_t>(sign) << data_qubits) + i] = v[i] * inv;
    return StateVector::from_amplitudes(QubitLayout({{"sign", 1}, {"data", data_qubits}}), amps);
}

StateVector label_state(const LabelVector& y, int data_qubits) {
    std::vector<double> pad(std::size_t{1} << data_qubits, 0.0);
    std::copy(y.y.begin(), y.y.end(), pad.begin());
    return StateVector::encode(QubitLayout({{"data", data_qubits}}), "data", pad);
}

// ---- classical-track ------------------------------------------------------

int cmd_classical_track(const Global& g) {
    json defaults = {{"fixture", "shift"}, {"frames", 8},      {"frame_len", 50},
                     {"object_len", 10},  {"start", 5},        {"shift", 3},
                     {"patch_len", 16},   {"rows", 40},        {"cols", 40},
                     {"object_rows", 4},  {"object_cols", 4},  {"patch_rows", 12},
                     {"patch_cols", 12},  {"labels_c", 0.5},   {"alpha", 0.01}};
    const json cfg = resolve_config(g, std::move(defaults), "classical-track");
    const auto fixture = cfg.at("fixture").get<std::string>();
    const std::uint64_t seed = get_seed(cfg);
    const auto frames = get_count(cfg, "frames", 2);
    const fs::path out = ensure_out(g);

    io::Csv csv;
    std::string tail;
    if (fixture == "static" || fixture == "shift") {
        const long shift = fixture == "static" ? 0 : static_cast<long>(get_count(cfg, "shift", 0));
        const auto object_len = get_count(cfg, "object_len");
        const auto start = get_count(cfg, "start", 0);
        const auto video = make_shift_video(get_count(cfg, "frame_len", 2), object_len, start,
                                            shift, frames, rng::derive(seed, "classical_track", 0, 0));
        TrackConfig1D tc;
        tc.patch_len = get_count(cfg, "patch_len", 2);
        tc.labels_c = get_pos(cfg, "labels_c");
        tc.alpha = get_pos(cfg, "alpha");
        const auto center0 = static_cast<std::ptrdiff_t>(start + object_len / 2);
        const auto traj = track(video, center0, tc);
        csv.header = {"frame", "position"};
        for (std::size_t f = 0; f < traj.size(); ++f)
            csv.rows.push_back({std::to_string(f), std::to_string(traj[f])});
        tail = "final position " + std::to_string(traj.back());
    } else if (fixture == "diagonal") {
        const auto rows = get_count(cfg, "rows", 2);
        const auto cols = get_count(cfg, "cols", 2);
        const auto orows = get_count(cfg, "object_rows");
        const auto ocols = get_count(cfg, "object_cols");
        TrackConfig2D tc;
        tc.patch_rows = get_count(cfg, "patch_rows", 2);
        tc.patch_cols = get_count(cfg, "patch_cols", 2);
        tc.labels_c = get_pos(cfg, "labels_c");
        tc.alpha = get_pos(cfg, "alpha");
        // high contrast scene, dim background under a bright object
        auto eng = rng::engine(rng::derive(seed, "classical_track", 0, 1));
        Image background = Image::filled(rows, cols);
        for (double& v : background.px) v = rng::uniform(eng, 0.0, 0.3);
        Image object = Image::filled(orows, ocols);
        for (double& v : object.px) v = rng::uniform(eng, 0.7, 1.0);
        // start where the tracking window just fits the top-left corner
        const std::size_t off_r = tc.patch_rows / 2 - std::min(tc.patch_rows / 2, orows / 2);
        const std::size_t off_c = tc.patch_cols / 2 - std::min(tc.patch_cols / 2, ocols / 2);
        std::vector<Image> video;
        for (std::size_t k = 0; k < frames; ++k) {
            Image frame = background;
            place_object(frame, object, off_r + k, off_c + k);
            video.push_back(std::move(frame));
        }
        const std::pair<std::ptrdiff_t, std::ptrdiff_t> center0 = {
            static_cast<std::ptrdiff_t>(off_r + orows / 2),
            static_cast<std::ptrdiff_t>(off_c + ocols / 2)};
        const auto traj = track(video, center0, tc);
        csv.header = {"frame", "row", "col"};
        for (std::size_t f = 0; f < traj.size(); ++f)
            csv.rows.push_back({std::to_string(f), std::to_string(traj[f].first),
                                std::to_string(traj[f].second)});
        tail = "final position (" + std::to_string(traj.back().first) + ", " +
               std::to_string(traj.back().second) + ")";
    } else {
        throw ConfigError("fixture must be static, shift, or diagonal");
    }

    io::write_csv((out / "trajectory.csv").string(), csv);
    emit_manifest(g, out, "classical-track", cfg, {"trajectory.csv"});
    std::cout << "classical-track: " << fixture << " fixture, " << csv.rows.size()
              << " frames, " << tail << "\n";
    return 0;
}

// ---- quantum-verify -------------------------------------------------------

int cmd_quantum_verify(const Global& g) {
    json defaults = {{"n", 4},           {"instances", 3},  {"generator", "random"},
                     {"s0", 12},         {"s1", 12},        {"alpha", 0.1},
                     {"labels_c", 1.0},  {"epsilon", 0.1},  {"kappa_cap", 60.0},
                     {"max_redraws", 64}, {"evolution", "spectral"}, {"phase_mode", "full"}};
    const json cfg = resolve_config(g, std::move(defaults), "quantum-verify");
    const std::size_t n = get_count(cfg, "n", 2);
    if (n > 64) throw ConfigError("n above 64 is not simulable in this driver");
    const auto instances = get_count(cfg, "instances");
    const auto generator = cfg.at("generator").get<std::string>();
    if (generator != "random" && generator != "identity")
        throw ConfigError("generator must be random or identity");
    const int s0 = get_precision(cfg, "s0");
    const int s1 = get_precision(cfg, "s1");
    const double alpha = get_pos(cfg, "alpha");
    const double labels_c = get_pos(cfg, "labels_c");
    const double epsilon = get_unit(cfg, "epsilon");
    const double kappa_cap = get_pos(cfg, "kappa_cap");
    const int max_redraws = static_cast<int>(get_count(cfg, "max_redraws", 0));
    const std::uint64_t seed = get_seed(cfg);
    const auto evolution = parse_evolution(cfg.at("evolution").get<std::string>());
    const auto phase_mode = parse_phase(cfg.at("phase_mode").get<std::string>());
    const fs::path out = ensure_out(g);

    const auto draw = [&](const char* tag, std::size_t i) {
        if (generator == "identity") {
            std::vector<double> gen(n, 0.0);
            gen[0] = 1.0;
            return CirculantMatrix::from_generator(gen);
        }
        for (int attempt = 0;; ++attempt) {
            auto eng = rng::engine(rng::derive(seed, tag, i, static_cast<std::uint64_t>(attempt)));
            std::vector<double> gen(n);
            for (auto& v : gen) v = rng::uniform(eng, 0.1, 1.0);
            auto m = CirculantMatrix::from_generator(gen);
            if (spectral(m).condition_number <= kappa_cap) return m;
            if (attempt >= max_redraws)
                throw std::runtime_error("quantum-verify: no admissible generator in the redraw budget");
        }
    };

    const int d = std::max(1, ceil_log2(n));
    const LabelVector y = gaussian_labels(n, labels_c);
    const StateVector ystate = label_state(y, d);

    io::Csv csv;
    csv.header = {"instance", "n",          "kappa_x",        "kappa_z",
                  "s0",       "s1",         "fidelity_w",     "fidelity_yhat",
                  "p_success_train",        "p_success_detect"};
    double min_fw = 1.0, min_fy = 1.0;
    for (std::size_t i = 0; i < instances; ++i) {
        const auto X = draw("quantum_verify_x", i);
        const auto Z = draw("quantum_verify_z", i);
        PipelineConfig pc;
        pc.alpha = alpha;
        pc.precision_qubits = s0;
        pc.epsilon = epsilon;
        pc.evolution = evolution;
        pc.phase_mode = phase_mode;
        const auto trained = train_quantum(X, ystate, pc);
        PipelineConfig pd = pc;
        pd.precision_qubits = s1;
        const auto detected = detect_quantum(Z, trained.state, pd);

        const auto sol = train(X, y, alpha);
        const auto resp = detect(Z, sol);
        const double fw = overlap(trained.state, ref_state(sol.w, d, 1));
        const double fy = overlap(detected.state, ref_state(resp, d, 0));
        min_fw = std::min(min_fw, fw);
        min_fy = std::min(min_fy, fy);
        csv.rows.push_back({std::to_string(i), std::to_string(n),
                            fmt(spectral(X).condition_number), fmt(spectral(Z).condition_number),
                            std::to_string(s0), std::to_string(s1), fmt(fw), fmt(fy),
                            fmt(trained.success_probability), fmt(detected.success_probability)});
    }

    io::write_csv((out / "verify.csv").string(), csv);
    json results = {{"min_fidelity_w", min_fw}, {"min_fidelity_yhat", min_fy}};
    emit_manifest(g, out, "quantum-verify", cfg, {"verify.csv"}, results);
    std::cout << "quantum-verify: " << instances << " instances at n " << n
              << ", min fidelity_w " << fmt(min_fw) << ", min fidelity_yhat " << fmt(min_fy)
              << "\n";
    return 0;
}

// ---- disappearance --------------------------------------------------------

int cmd_disappearance(const Global& g) {
    json defaults = {{"runs", 50},          {"theta1", 0.75},      {"labels_c", 1.0},
                     {"alpha", 1.5},        {"precision_qubits", 12}, {"epsilon", 0.1},
                     {"kappa_cap", 60.0},   {"max_redraws", 64},  {"svg", true}};
    json cfg = resolve_config(g, std::move(defaults), "disappearance");
    DisappearanceConfig dc;
    dc.runs = get_count(cfg, "runs");
    dc.theta1 = get_unit(cfg, "theta1");
    dc.labels_c = get_pos(cfg, "labels_c");
    dc.alpha = get_pos(cfg, "alpha");
    dc.precision_qubits = get_precision(cfg, "precision_qubits");
    dc.epsilon = get_unit(cfg, "epsilon");
    dc.kappa_cap = get_pos(cfg, "kappa_cap");
    dc.max_redraws = static_cast<int>(get_count(cfg, "max_redraws", 0));
    dc.seed = get_seed(cfg);
    if (cfg.at("mode").get<std::string>() == "sampled") {
        const auto shots = as_index(cfg.at("shots"), "shots");
        dc.shots = shots > 0 ? shots : swap_test_shots(0.1);
        cfg["shots"] = dc.shots;
    }
    const fs::path out = ensure_out(g);

    const auto sum = run_disappearance_experiment(dc);

    io::Csv csv;
    csv.header = {"run",       "scene_seed",        "redraws",  "kappa_train",
                  "p1_exists", "p1_gone",           "p1_exists_classical",
                  "p1_gone_classical",              "exists_ok", "gone_ok"};
    for (const auto& r : sum.runs)
        csv.rows.push_back({std::to_string(r.run), std::to_string(r.scene_seed),
                            std::to_string(r.redraws), fmt(r.kappa_train), fmt(r.p1_exists),
                            fmt(r.p1_gone), fmt(r.p1_exists_classical), fmt(r.p1_gone_classical),
                            std::string(r.exists_classified_ok ? "1" : "0"),
                            std::string(r.gone_classified_ok ? "1" : "0")});
    io::write_csv((out / "p1_runs.csv").string(), csv);

    std::vector<std::string> files = {"p1_runs.csv"};
    if (cfg.at("svg").get<bool>()) {
        io::ScatterSeries exists{"P1 exists", "#d62728", {}};
        io::ScatterSeries gone{"P1 gone", "#2ca02c", {}};
        for (const auto& r : sum.runs) {
            exists.points.push_back({static_cast<double>(r.run), r.p1_exists});
            gone.points.push_back({static_cast<double>(r.run), r.p1_gone});
        }
        io::write_scatter_svg((out / "p1_scatter.svg").string(), "disappearance detection", "run",
                              "P1", {exists, gone}, {dc.theta1});
        files.push_back("p1_scatter.svg");
    }

    json results = {{"correct", sum.correct},
                    {"total", 2 * sum.runs.size()},
                    {"max_p1_exists", sum.max_p1_exists},
                    {"min_p1_gone", sum.min_p1_gone},
                    {"min_margin", sum.min_margin}};
    emit_manifest(g, out, "disappearance", cfg, files, results);
    std::cout << "disappearance: " << sum.correct << "/" << 2 * sum.runs.size()
              << " classified at theta1 " << fmt(dc.theta1) << ", max P1(exists) "
              << fmt(sum.max_p1_exists) << ", min P1(gone) " << fmt(sum.min_p1_gone) << "\n";
    return 0;
}

// ---- motion-match ---------------------------------------------------------

int cmd_motion_match(const Global& g) {
    json defaults = {{"scenario", "match"},
                     {"rows", 8},
                     {"cols", 8},
                     {"object_rows", 2},
                     {"object_cols", 2},
                     {"positions", json::parse("[[0,0],[0,3],[0,6],[3,3],[6,0],[6,3],[6,6]]")},
                     {"off_path_frame", 3},
                     {"off_path_position", json::parse("[5,0]")},
                     {"theta2", 0.9},
                     {"delta", 0.09},
                     {"noise", 0.01},
                     {"labels_c", 1.0},
                     {"alpha", 0.1},
                     {"precision_qubits", 13},
                     {"epsilon", 0.2},
                     {"kappa_cap", 300.0},
                     {"max_redraws", 64}};
    json cfg = resolve_config(g, std::move(defaults), "motion-match");
    const auto scenario = cfg.at("scenario").get<std::string>();
    if (scenario != "match" && scenario != "mismatch")
        throw ConfigError("scenario must be match or mismatch");

    MotionMatchConfig mc;
    mc.rows = get_count(cfg, "rows", 2);
    mc.cols = get_count(cfg, "cols", 2);
    mc.object_rows = get_count(cfg, "object_rows");
    mc.object_cols = get_count(cfg, "object_cols");
    mc.positions.clear();
    for (const auto& p : cfg.at("positions")) {
        if (!p.is_array() || p.size() != 2)
            throw ConfigError("positions entries must be [row, col] pairs");
        mc.positions.push_back({as_index(p[0], "positions row"), as_index(p[1], "positions col")});
    }
    mc.off_path_frame = as_index(cfg.at("off_path_frame"), "off_path_frame");
    const json& opp = cfg.at("off_path_position");
    if (!opp.is_array() || opp.size() != 2)
        throw ConfigError("off_path_position must be a [row, col] pair");
    mc.off_path_position = {as_index(opp[0], "off_path row"), as_index(opp[1], "off_path col")};
    mc.theta2 = get_unit(cfg, "theta2");
    mc.delta = get_unit(cfg, "delta");
    mc.noise = get_pos(cfg, "noise");
    mc.labels_c = get_pos(cfg, "labels_c");
    mc.alpha = get_pos(cfg, "alpha");
    mc.precision_qubits = get_precision(cfg, "precision_qubits");
    mc.epsilon = get_unit(cfg, "epsilon");
    mc.kappa_cap = get_pos(cfg, "kappa_cap");
    mc.max_redraws = static_cast<int>(get_count(cfg, "max_redraws", 0));
    mc.seed = get_seed(cfg);
    if (ceil_log2(mc.rows * mc.cols) + mc.precision_qubits + 2 > 24)
        throw ConfigError("frame size and precision exceed the simulable qubit budget");
    if (cfg.at("mode").get<std::string>() == "sampled") {
        const auto shots = as_index(cfg.at("shots"), "shots");
        mc.shots = shots > 0 ? shots : swap_test_shots(mc.delta);
        cfg["shots"] = mc.shots;
    }
    const fs::path out = ensure_out(g);

    const auto sc = make_motion_scenario(mc, scenario == "mismatch");
    const auto res = motion_match(sc.actual, sc.templates, mc);

    auto schedule = mc.positions;
    if (scenario == "mismatch") schedule[mc.off_path_frame] = mc.off_path_position;
    io::Csv csv;
    csv.header = {"frame",      "template_row", "template_col",      "actual_row",
                  "actual_col", "component_overlap", "exact_overlap"};
    for (std::size_t k = 0; k < res.component_overlaps.size(); ++k)
        csv.rows.push_back({std::to_string(k), std::to_string(mc.positions[k].first),
                            std::to_string(mc.positions[k].second),
                            std::to_string(schedule[k].first), std::to_string(schedule[k].second),
                            fmt(res.component_overlaps[k]), fmt(res.exact_overlaps[k])});
    io::write_csv((out / "components.csv").string(), csv);

    json results = {{"scenario", scenario}, {"p2", res.p2},
                    {"matched", res.matched}, {"theta2", mc.theta2},
                    {"kappa_max", sc.kappa_max}, {"redraws", sc.redraws}};
    emit_manifest(g, out, "motion-match", cfg, {"components.csv"}, results);
    std::cout << "motion-match: " << scenario << " scenario, P2 " << fmt(res.p2) << ", "
              << (res.matched ? "matched" : "not matched") << " at theta2 " << fmt(mc.theta2)
              << "\n";
    return 0;
}

// ---- lcu-cert --------------------------------------------------------------

int cmd_lcu_cert(const Global& g) {
    json defaults = {{"sizes", json::parse("[2,4,8]")},
                     {"times", json::parse("[0.5,1.0,2.0]")},
                     {"epsilons", json::parse("[1e-2,1e-4,1e-6]")}};
    const json cfg = resolve_config(g, std::move(defaults), "lcu-cert");
    const std::uint64_t seed = get_seed(cfg);
    std::vector<std::size_t> sizes;
    for (const auto& v : cfg.at("sizes")) {
        sizes.push_back(as_index(v, "sizes entry"));
        if (sizes.back() < 2 || sizes.back() > 64)
            throw ConfigError("sizes entries must lie in [2, 64]");
    }
    std::vector<double> times;
    for (const auto& v : cfg.at("times")) {
        if (!v.is_number()) throw ConfigError("times entries must be numbers");
        times.push_back(v.get<double>());
        if (!(times.back() >= 0.0) || !std::isfinite(times.back()))
            throw ConfigError("times entries must be nonnegative and finite");
    }
    std::vector<double> epsilons;
    for (const auto& v : cfg.at("epsilons")) {
        if (!v.is_number()) throw ConfigError("epsilons entries must be numbers");
        epsilons.push_back(v.get<double>());
        if (!(epsilons.back() >= 1e-12 && epsilons.back() < 1.0))
            throw ConfigError("epsilons entries must lie in [1e-12, 1)");
    }
    if (sizes.empty() || times.empty() || epsilons.empty())
        throw ConfigError("sizes, times, and epsilons must be nonempty");
    const fs::path out = ensure_out(g);

    io::Csv csv;
    csv.header = {"n", "t", "epsilon", "taylor_order", "segments", "error", "bound", "within"};
    double max_err = 0.0;
    bool all_within = true;
    for (const std::size_t n : sizes) {
        auto eng = rng::engine(rng::derive(seed, "lcu_cert", n, 0));
        std::vector<double> raw(n);
        for (auto& v : raw) v = rng::uniform(eng, 0.0, 1.0);
        const auto norm = normalize_for_oracle(raw);
        const auto x = CirculantMatrix::from_generator(norm.values);
        const Eigen::MatrixXcd h = extended_hamiltonian(x);
        for (const double t : times)
            for (const double eps : epsilons) {
                const auto ev = lcu_evolve(x, t, eps);
                const Eigen::MatrixXcd diff = ev.op - exact_evolve(h, t);
                const double err = diff.jacobiSvd().singularValues()(0);
                max_err = std::max(max_err, err);
                const bool within = err <= eps;
                all_within = all_within && within;
                csv.rows.push_back({std::to_string(n), fmt(t), fmt(eps),
                                    std::to_string(ev.taylor_order), std::to_string(ev.segments),
                                    fmt(err), fmt(ev.error_bound),
                                    std::string(within ? "1" : "0")});
            }
    }

    io::write_csv((out / "evolution.csv").string(), csv);
    json results = {{"cases", csv.rows.size()}, {"max_error", max_err}, {"all_within", all_within}};
    emit_manifest(g, out, "lcu-cert", cfg, {"evolution.csv"}, results);
    std::cout << "lcu-cert: " << csv.rows.size() << " cases, max error " << fmt(max_err)
              << ", " << (all_within ? "all within target" : "TARGET MISSED") << "\n";
    return all_within ? 0 : 1;
}

// ---- state-prep-check -------------------------------------------------------

int cmd_state_prep_check(const Global& g) {
    json defaults = {{"sizes", json::parse("[16,64,256,1024]")}, {"c", 0.5}};
    const json cfg = resolve_config(g, std::move(defaults), "state-prep-check");
    const double c = get_pos(cfg, "c");
    std::vector<std::size_t> sizes;
    for (const auto& v : cfg.at("sizes")) {
        sizes.push_back(as_index(v, "sizes entry"));
        if (sizes.back() < 2 || sizes.back() > 65536)
            throw ConfigError("sizes entries must lie in [2, 65536]");
    }
    if (sizes.empty()) throw ConfigError("sizes must be nonempty");
    const fs::path out = ensure_out(g);

    double erf_err = 0.0;
    for (int i = 0; i <= 1024; ++i) {
        const double x = 4.0 * i / 1024.0;
        erf_err = std::max(erf_err, std::abs(erf_poly(x) - std::erf(x)));
    }

    io::Csv csv;
    csv.header = {"n", "c", "rotations", "clamped", "success", "overlap", "erf_grid_error"};
    double min_success = 1.0, min_overlap = 1.0;
    for (const std::size_t n : sizes) {
        const LabelVector y = gaussian_labels(n, c);
        const auto sur = surrogate_labels(n, c);
        const auto prep = prepare_surrogate_state(sur);
        const auto ref = refine_to_labels(prep, sur, y);
        const double ov = overlap(ref.state, label_state(y, prep.data_qubits));
        min_success = std::min(min_success, ref.success_probability);
        min_overlap = std::min(min_overlap, ov);
        csv.rows.push_back({std::to_string(n), fmt(c), std::to_string(prep.rotations),
                            std::to_string(ref.clamped), fmt(ref.success_probability), fmt(ov),
                            fmt(erf_err)});
    }

    io::write_csv((out / "state_prep.csv").string(), csv);
    json results = {{"min_success", min_success},
                    {"min_overlap", min_overlap},
                    {"erf_grid_error", erf_err}};
    emit_manifest(g, out, "state-prep-check", cfg, {"state_prep.csv"}, results);
    std::cout << "state-prep-check: " << sizes.size() << " sizes, min success "
              << fmt(min_success) << ", min overlap " << fmt(min_overlap) << ", erf grid error "
              << fmt(erf_err) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"circulant tracking simulator"};
    app.require_subcommand(1);
    Global g;
    app.add_option("--config", g.config_path, "JSON config file (schema_version 1)");
    app.add_option("--seed", g.seed, "root seed for every random draw");
    app.add_option("--out", g.out_dir, "output directory for artifacts");
    app.add_option("--mode", g.mode, "overlap readout: projection or sampled")
        ->check(CLI::IsMember({"projection", "sampled"}));
    app.add_option("--shots", g.shots, "swap test shots in sampled mode (0 = from accuracy)");

    auto* c_track = app.add_subcommand("classical-track", "FFT ridge tracker on synthetic video");
    auto* c_verify = app.add_subcommand("quantum-verify", "pipeline fidelities against the dense solve");
    auto* c_dis = app.add_subcommand("disappearance", "object disappearance detection experiment");
    auto* c_motion = app.add_subcommand("motion-match", "template path matching experiment");
    auto* c_lcu = app.add_subcommand("lcu-cert", "truncated Taylor evolution error certificate");
    auto* c_prep = app.add_subcommand("state-prep-check", "gaussian label state loading report");
    for (auto* sub : {c_track, c_verify, c_dis, c_motion, c_lcu, c_prep}) sub->fallthrough();

    CLI11_PARSE(app, argc, argv);
    g.seed_given = app.count("--seed") > 0;
    g.mode_given = app.count("--mode") > 0;
    g.shots_given = app.count("--shots") > 0;

    try {
        if (c_track->parsed()) return cmd_classical_track(g);
        if (c_verify->parsed()) return cmd_quantum_verify(g);
        if (c_dis->parsed()) return cmd_disappearance(g);
        if (c_motion->parsed()) return cmd_motion_match(g);
        if (c_lcu->parsed()) return cmd_lcu_cert(g);
        if (c_prep->parsed()) return cmd_state_prep_check(g);
    } catch (const ConfigError& e) {
        std::cerr << "qvt: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "qvt: invalid parameter: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "qvt: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
