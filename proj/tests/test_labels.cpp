#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "qvt/labels.hpp"

TEST_CASE("four-point label vector has the frozen values", "[labels]") {
    // n = 4, c = 0.5 gives s = 1: [1, e^-1, e^-4, e^-1], pinning both the
    // peak at index 0 and the mirrored tail
    const auto lv = qvt::gaussian_labels(4, 0.5);
    REQUIRE(lv.y.size() == 4);
    CHECK_THAT(lv.s, Catch::Matchers::WithinAbs(1.0, 1e-15));
    CHECK_THAT(lv.y[0], Catch::Matchers::WithinAbs(1.0, 1e-15));
    CHECK_THAT(lv.y[1], Catch::Matchers::WithinAbs(std::exp(-1.0), 1e-15));
    CHECK_THAT(lv.y[2], Catch::Matchers::WithinAbs(std::exp(-4.0), 1e-15));
    CHECK_THAT(lv.y[3], Catch::Matchers::WithinAbs(std::exp(-1.0), 1e-15));
}

TEST_CASE("labels are mirrored and peak at zero shift", "[labels]") {
    for (std::size_t n : {5u, 8u, 20u, 33u}) {
        const auto lv = qvt::gaussian_labels(n);
        CAPTURE(n);
        CHECK(lv.y[0] == 1.0);
        for (std::size_t i = 1; i < n; ++i) {
            CHECK(lv.y[i] < 1.0);
            CHECK(lv.y[i] > 0.0);
        }
        // y_{1+d} == y_{n+1-(1+d)} in 1-based terms: mirror around index 0
        for (std::size_t d = 1; d < n; ++d)
            CHECK_THAT(lv.y[d], Catch::Matchers::WithinAbs(lv.y[n - d], 1e-15));
        // non-increasing up to the middle
        for (std::size_t i = 1; i <= (n + 1) / 2 - 1; ++i) CHECK(lv.y[i] <= lv.y[i - 1]);
    }
}

TEST_CASE("bandwidth follows c * sqrt(n)", "[labels]") {
    const auto a = qvt::gaussian_labels(16, 0.5);
    CHECK_THAT(a.s, Catch::Matchers::WithinAbs(2.0, 1e-15));
    const auto b = qvt::gaussian_labels(16, 1.0);
    CHECK_THAT(b.s, Catch::Matchers::WithinAbs(4.0, 1e-15));
    // wider bandwidth, heavier tails
    CHECK(b.y[3] > a.y[3]);
}

TEST_CASE("2D labels are the outer product of the axis profiles", "[labels]") {
    const auto yr = qvt::gaussian_labels(4, 0.5);
    const auto yc = qvt::gaussian_labels(6, 0.5);
    const auto y2 = qvt::gaussian_labels_2d(4, 6, 0.5);
    REQUIRE(y2.y.size() == 24);
    CHECK(y2.rows == 4);
    CHECK(y2.cols == 6);
    CHECK_THAT(y2.s, Catch::Matchers::WithinAbs(yr.s, 1e-15));
    CHECK_THAT(y2.s_col, Catch::Matchers::WithinAbs(yc.s, 1e-15));
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = 0; b < 6; ++b)
            CHECK_THAT(y2.y[a * 6 + b], Catch::Matchers::WithinAbs(yr.y[a] * yc.y[b], 1e-15));
}

TEST_CASE("label energy grows like sqrt(n)", "[labels]") {
    // for s = c sqrt(n) the energy sum approaches sqrt(pi/2) * s
    const auto lv = qvt::gaussian_labels(4096, 0.5);
    const double expect = std::sqrt(std::numbers::pi / 2.0) * lv.s;
    CHECK_THAT(lv.energy(), Catch::Matchers::WithinRel(expect, 1e-3));
}

TEST_CASE("label arguments are validated", "[labels]") {
    CHECK_THROWS(qvt::gaussian_labels(1));
    CHECK_THROWS(qvt::gaussian_labels(8, 0.0));
    CHECK_THROWS(qvt::gaussian_labels(8, -1.0));
}
