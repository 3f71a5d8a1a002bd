#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "qvt/rng.hpp"
#include "qvt/swap_test.hpp"

using namespace qvt;
using Catch::Matchers::WithinAbs;

namespace {

StateVector random_state(const QubitLayout& lay, std::uint64_t seed) {
    auto eng = rng::engine(seed);
    std::vector<cd> values(lay.dim());
    double n2 = 0.0;
    for (cd& v : values) {
        v = cd(rng::uniform(eng, -1.0, 1.0), rng::uniform(eng, -1.0, 1.0));
        n2 += std::norm(v);
    }
    for (cd& v : values) v /= std::sqrt(n2);
    return StateVector::from_amplitudes(lay, std::move(values));
}

} // namespace

TEST_CASE("identical states always measure the ancilla at zero", "[swap-test]") {
    const QubitLayout lay({{"data", 2}});
    const auto a = random_state(lay, 11);
    const auto est = swap_test(a, a);
    CHECK_THAT(est.p0, WithinAbs(1.0, 1e-12));
    CHECK_THAT(est.overlap_estimate, WithinAbs(1.0, 1e-12));
    CHECK(est.standard_error == 0.0);
    CHECK(est.shots == 0);
}

TEST_CASE("orthogonal states split the ancilla evenly", "[swap-test]") {
    const QubitLayout lay({{"data", 1}});
    const auto zero = StateVector::encode(lay, "data", std::vector<double>{1, 0});
    const auto one = StateVector::encode(lay, "data", std::vector<double>{0, 1});

    const auto exact = swap_test(zero, one);
    CHECK_THAT(exact.p0, WithinAbs(0.5, 1e-14));
    CHECK(exact.overlap_estimate == 0.0);

    // sampled mode: the clipped estimator stays within a few standard errors of zero
    const auto sampled = swap_test(zero, one, 1600, rng::derive(5, "swap_orth"));
    CHECK(sampled.shots == 1600);
    CHECK(sampled.overlap_estimate <= 3.0 * sampled.standard_error);
}

TEST_CASE("projection mode reads the squared overlap exactly", "[swap-test]") {
    for (int qubits : {1, 2, 3}) {
        const QubitLayout lay({{"data", qubits}});
        for (std::uint64_t trial = 0; trial < 8; ++trial) {
            const auto a = random_state(lay, rng::derive(21, "swap_pair", trial, 0));
            const auto b = random_state(lay, rng::derive(21, "swap_pair", trial, 1));
            const double truth = overlap(a, b);
            const auto est = swap_test(a, b);
            CHECK_THAT(est.p0, WithinAbs(0.5 * (1.0 + truth), 1e-12));
            CHECK_THAT(est.overlap_estimate, WithinAbs(truth, 1e-12));
            CHECK(est.standard_error == 0.0);
        }
    }
}

TEST_CASE("multi register states swap as wholes", "[swap-test]") {
    const QubitLayout lay({{"sign", 1}, {"data", 2}});
    const auto a = random_state(lay, 31);
    const auto b = random_state(lay, 32);
    const auto est = swap_test(a, b);
    CHECK_THAT(est.overlap_estimate, WithinAbs(overlap(a, b), 1e-12));
}

TEST_CASE("sampled estimates are reproducible and concentrate", "[swap-test]") {
    const QubitLayout lay({{"data", 1}});
    const double theta = 0.5796397403637044; // cos^2 = 0.7
    const auto a = StateVector::encode(lay, "data",
                                       std::vector<double>{std::cos(theta), std::sin(theta)});
    const auto b = StateVector::encode(lay, "data", std::vector<double>{1, 0});
    const double truth = overlap(a, b);
    REQUIRE_THAT(truth, WithinAbs(0.7, 1e-12));

    const std::size_t shots = swap_test_shots(0.1);
    const auto seed = rng::derive(77, "swap_sample");
    const auto first = swap_test(a, b, shots, seed);
    const auto second = swap_test(a, b, shots, seed);
    CHECK(first.zeros == second.zeros);
    CHECK(first.overlap_estimate == second.overlap_estimate);
    CHECK(std::abs(first.overlap_estimate - truth) <= 0.1);
    CHECK_THAT(first.standard_error,
               WithinAbs(2.0 * std::sqrt(first.p0 * (1.0 - first.p0) / double(shots)), 0.02));
}

TEST_CASE("estimator is unbiased over many seeded runs", "[swap-test]") {
    const QubitLayout lay({{"data", 1}});
    const double theta = 0.5796397403637044;
    const auto a = StateVector::encode(lay, "data",
                                       std::vector<double>{std::cos(theta), std::sin(theta)});
    const auto b = StateVector::encode(lay, "data", std::vector<double>{1, 0});
    const double truth = overlap(a, b);

    const std::size_t shots = 400;
    const std::size_t trials = 10000;
    double sum = 0.0, sum2 = 0.0;
    for (std::size_t k = 0; k < trials; ++k) {
        const auto est = swap_test(a, b, shots, rng::derive(123, "swap_bias", k));
        sum += est.overlap_estimate;
        sum2 += est.overlap_estimate * est.overlap_estimate;
    }
    const double mean = sum / double(trials);
    const double var = sum2 / double(trials) - mean * mean;
    const double sigma_mean = std::sqrt(var / double(trials));
    CHECK(std::abs(mean - truth) <= 3.0 * sigma_mean);
}

TEST_CASE("mismatched layouts are rejected", "[swap-test]") {
    const auto a = random_state(QubitLayout({{"data", 2}}), 41);
    const auto b = random_state(QubitLayout({{"data", 1}}), 42);
    const auto c = random_state(QubitLayout({{"qubits", 2}}), 43);
    CHECK_THROWS_AS(swap_test(a, b), std::invalid_argument);
    CHECK_THROWS_AS(swap_test(a, c), std::invalid_argument);
}

TEST_CASE("shot budget covers the target accuracy", "[swap-test]") {
    CHECK(swap_test_shots(0.1) == 400);
    CHECK(swap_test_shots(0.05) == 1600);
    CHECK(swap_test_shots(0.5) == 16);
    CHECK_THROWS_AS(swap_test_shots(0.0), std::invalid_argument);
    CHECK_THROWS_AS(swap_test_shots(1.0), std::invalid_argument);
    CHECK_THROWS_AS(swap_test_shots(-0.1), std::invalid_argument);
}
