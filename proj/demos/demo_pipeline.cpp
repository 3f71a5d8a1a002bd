// Runs the quantum training and detection chain on one random patch and
// compares every stage against the classical solve.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

#include "qvt/pipeline.hpp"
#include "qvt/ridge.hpp"
#include "qvt/rng.hpp"
#include "qvt/swap_test.hpp"

namespace {

qvt::StateVector embed(const std::vector<double>& v, int data_qubits, int sign) {
    std::vector<qvt::cd> amps(std::size_t{1} << (data_qubits + 1), qvt::cd(0, 0));
    double n2 = 0.0;
    for (double x : v) n2 += x * x;
    for (std::size_t i = 0; i < v.size(); ++i)
        amps[(static_cast<std::size_t>(sign) << data_qubits) + i] = v[i] / std::sqrt(n2);
    return qvt::StateVector::from_amplitudes(
        qvt::QubitLayout({{"sign", 1}, {"data", data_qubits}}), amps);
}

std::vector<double> spiked(std::size_t n, std::mt19937_64& eng) {
    std::vector<double> gen(n);
    gen[0] = 1.0;
    for (std::size_t a = 1; a < n; ++a)
        gen[a] = qvt::rng::uniform(eng, 0.0, 2.0 / static_cast<double>(n));
    return gen;
}

} // namespace

int main() {
    using namespace qvt;
    const std::size_t n = 8;
    const int d = 3;
    const double alpha = 0.1;

    auto eng = rng::engine(rng::derive(7, "demo-pipeline"));
    const auto x = CirculantMatrix::from_generator(spiked(n, eng));
    const auto z = CirculantMatrix::from_generator(spiked(n, eng));
    const LabelVector y = gaussian_labels(n, 0.5);

    const auto sol = train(x, y, alpha);
    const auto resp = detect(z, sol);

    PipelineConfig pc;
    pc.alpha = alpha;
    pc.precision_qubits = 10;
    pc.epsilon = 0.05;
    const auto ystate = StateVector::encode(QubitLayout({{"data", d}}), "data", y.y);
    const auto trained = train_quantum(x, ystate, pc);
    const auto detected = detect_quantum(z, trained.state, pc);

    const double fid_w = overlap(trained.state, embed(sol.w, d, 1));
    const auto yref = embed(resp, d, 0);
    const double fid_y = overlap(detected.state, yref);
    const auto est = swap_test(detected.state, yref, 1600, rng::derive(7, "demo-shots"));

    StateVector response = detected.state;
    response.project("sign", 0);
    const auto probs = response.marginal("data");
    const auto peak = static_cast<std::size_t>(
        std::max_element(probs.begin(), probs.end()) - probs.begin());

    std::printf("patch condition number  %.3f\n", spectral(x).condition_number);
    std::printf("training    success %.4f   filter fidelity   %.8f\n",
                trained.success_probability, fid_w);
    std::printf("detection   success %.4f   response fidelity %.8f\n",
                detected.success_probability, fid_y);
    std::printf("swap test   exact %.6f  estimated %.6f  (%zu shots)\n", fid_y,
                est.overlap_estimate, est.shots);
    std::printf("peak        quantum %zu  classical %zu\n", peak, argmax_response(resp));
    return 0;
}
