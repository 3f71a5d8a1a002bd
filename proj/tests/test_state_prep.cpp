#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include "qvt/state_prep.hpp"
#include "oracles.hpp"

namespace {

qvt::StateVector encode_padded(const std::vector<double>& v, int d) {
    std::vector<double> pad(std::size_t{1} << d, 0.0);
    for (std::size_t i = 0; i < v.size(); ++i) pad[i] = v[i];
    return qvt::StateVector::encode(qvt::QubitLayout({{"data", d}}), "data", pad);
}

}  // namespace

TEST_CASE("erf polynomial tracks the integral to its stated accuracy", "[state-prep]") {
    CHECK(qvt::erf_poly(0.0) == Catch::Approx(0.0).margin(1e-15));
    CHECK(qvt::erf_poly(6.0) == Catch::Approx(1.0).margin(1e-9));
    CHECK(qvt::erf_poly(-0.8) == Catch::Approx(-qvt::erf_poly(0.8)).margin(1e-15));

    for (double x : {0.1, 0.5, 1.0, 1.7, 2.4}) {
        INFO("x = " << x);
        CHECK(qvt::erf_poly(x) == Catch::Approx(oracle::erf_quadrature(x)).margin(2.5e-5));
    }
    double worst = 0.0;
    for (double x = 0.0; x <= 4.0; x += 0.005)
        worst = std::max(worst, std::abs(qvt::erf_poly(x) - std::erf(x)));
    CHECK(worst <= 2.5e-5);
}

TEST_CASE("surrogate weights dominate the squared labels", "[state-prep]") {
    for (std::size_t n : {8ul, 16ul, 64ul}) {
        for (double c : {0.5, 1.0}) {
            auto sur = qvt::surrogate_labels(n, c);
            auto y = qvt::gaussian_labels(n, c);
            INFO("n = " << n << " c = " << c);
            REQUIRE(sur.squared.size() == n);
            CHECK(sur.s == Catch::Approx(c * std::sqrt(double(n))));
            CHECK(sur.squared[0] == 1.0);
            for (std::size_t i = 1; i < n; ++i) {
                CHECK(sur.squared[i] >= 0.0);
                CHECK(sur.squared[i] == Catch::Approx(sur.squared[n - i]));
            }
            // dominance at every site that carries non-negligible label mass
            for (std::size_t i = 0; i < n; ++i) {
                const double y2 = y.y[i] * y.y[i];
                if (y2 < 1e-10) continue;
                INFO("site " << i);
                CHECK(sur.squared[i] >= y2 * (1.0 - 1e-4));
            }
        }
    }

    // the envelope total is the peak cell plus the full gaussian integral
    for (std::size_t n : {64ul, 256ul}) {
        auto sur = qvt::surrogate_labels(n, 1.0);
        const double expected = 1.0 + std::sqrt(std::numbers::pi / 2.0) * sur.s;
        CHECK(sur.total == Catch::Approx(expected).epsilon(0.01));
    }
}

TEST_CASE("bisection loader emits one rotation per occupied node", "[state-prep]") {
    SECTION("full trees") {
        auto s8 = qvt::prepare_surrogate_state(qvt::surrogate_labels(8, 0.5));
        CHECK(s8.data_qubits == 3);
        CHECK(s8.rotations == 7);
        auto s16 = qvt::prepare_surrogate_state(qvt::surrogate_labels(16, 0.5));
        CHECK(s16.rotations == 15);
    }

    SECTION("padded tree skips empty subtrees") {
        auto sur = qvt::surrogate_labels(5, 0.5);
        auto prep = qvt::prepare_surrogate_state(sur);
        CHECK(prep.data_qubits == 3);
        // root + 2 nodes at depth 1 + 3 occupied nodes at depth 2
        CHECK(prep.rotations == 6);
        const auto& amp = prep.state.amplitudes();
        for (std::size_t i = 5; i < 8; ++i) CHECK(std::abs(amp[i]) == 0.0);
    }

    SECTION("amplitudes land on the normalized square roots") {
        auto sur = qvt::surrogate_labels(16, 1.0);
        auto prep = qvt::prepare_surrogate_state(sur);
        const auto& amp = prep.state.amplitudes();
        for (std::size_t i = 0; i < 16; ++i) {
            INFO("site " << i);
            CHECK(std::abs(amp[i] - std::sqrt(sur.squared[i] / sur.total)) < 1e-12);
        }
    }
}

TEST_CASE("refinement trims the surrogate to the exact labels", "[state-prep]") {
    for (std::size_t n : {8ul, 64ul}) {
        for (double c : {0.5, 1.0}) {
            auto sur = qvt::surrogate_labels(n, c);
            auto y = qvt::gaussian_labels(n, c);
            auto prep = qvt::prepare_surrogate_state(sur);
            auto ref = qvt::refine_to_labels(prep, sur, y);

            double y2 = 0.0;
            for (double v : y.y) y2 += v * v;

            INFO("n = " << n << " c = " << c);
            CHECK(ref.success_probability == Catch::Approx(y2 / sur.total).margin(1e-12));
            CHECK(qvt::overlap(ref.state, encode_padded(y.y, prep.data_qubits)) >= 1.0 - 1e-10);
            CHECK(ref.clamped == 0);
        }
    }
}

TEST_CASE("refinement success approaches one for wide gaussians", "[state-prep]") {
    double prev = 0.0;
    for (std::size_t n : {8ul, 16ul, 64ul, 256ul}) {
        auto sur = qvt::surrogate_labels(n, 0.5);
        auto ref = qvt::refine_to_labels(qvt::prepare_surrogate_state(sur), sur,
                                         qvt::gaussian_labels(n, 0.5));
        INFO("n = " << n);
        CHECK(ref.success_probability > prev);
        prev = ref.success_probability;
    }
    CHECK(prev > 0.9);

    auto sur = qvt::surrogate_labels(64, 1.0);
    auto ref = qvt::refine_to_labels(qvt::prepare_surrogate_state(sur), sur,
                                     qvt::gaussian_labels(64, 1.0));
    CHECK(ref.success_probability >= 0.9);
}

TEST_CASE("state preparation rejects bad inputs", "[state-prep]") {
    CHECK_THROWS_AS(qvt::surrogate_labels(0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(qvt::surrogate_labels(8, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(qvt::surrogate_labels(8, -1.0), std::invalid_argument);

    qvt::SurrogateLabels bad;
    bad.squared = {1.0, -0.5};
    bad.total = 0.5;
    CHECK_THROWS_AS(qvt::prepare_surrogate_state(bad), std::invalid_argument);
    bad.squared = {0.0, 0.0};
    bad.total = 0.0;
    CHECK_THROWS_AS(qvt::prepare_surrogate_state(bad), std::invalid_argument);

    auto sur = qvt::surrogate_labels(8, 0.5);
    auto prep = qvt::prepare_surrogate_state(sur);
    CHECK_THROWS_AS(qvt::refine_to_labels(prep, sur, qvt::gaussian_labels(4, 0.5)),
                    std::invalid_argument);
}
