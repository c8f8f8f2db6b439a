#include <doctest.h>

#include <cmath>

#include "thermdec/constants.hpp"
#include "thermdec/greens.hpp"

using namespace thermdec;

namespace {
constexpr double pi = constants::pi;
// coincidence kernel C(tau) = (4/(3 pi)) [1/(2 tau^2) - (pi^2/2) csch^2(pi tau)]
constexpr double c_half = 0.45335726545343903;
constexpr double c_one = 0.19650334407876803;
constexpr double c_five = 0.0084882636313774879;
constexpr double c_fifty = 8.4882636315677512e-5;
}  // namespace

TEST_CASE("transverse weights at u = pi") {
    // j0(pi) = 0, j1(pi) = 1/pi, so T_delta = -1/pi^2, T_r = 3/pi^2
    const auto w = greens::transverse_weights(pi);
    CHECK(w.t_delta == doctest::Approx(-1.0 / (pi * pi)).epsilon(1e-13));
    CHECK(w.t_r == doctest::Approx(3.0 / (pi * pi)).epsilon(1e-13));
}

TEST_CASE("transverse weights at zero") {
    const auto w = greens::transverse_weights(0.0);
    CHECK(w.t_delta == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(w.t_r == 0.0);
    CHECK(greens::transverse_trace_gap(0.0) == 0.0);
}

TEST_CASE("trace identity 3 T_delta + T_r = 2 j0") {
    for (double u : {0.05, 0.2, 0.24999, 0.25001, 1.0, 3.0, 10.0, 40.0}) {
        const auto w = greens::transverse_weights(u);
        const double j0 = std::sin(u) / u;
        CHECK(3.0 * w.t_delta + w.t_r == doctest::Approx(2.0 * j0).epsilon(1e-13));
    }
}

TEST_CASE("trace gap matches 2/3 - 2 j1(u)/u without cancellation") {
    for (double u : {1e-8, 1e-4, 0.1, 0.24999, 0.25001, 2.0, 20.0}) {
        const auto w = greens::transverse_weights(u);
        const double gap = greens::transverse_trace_gap(u);
        CHECK(gap == doctest::Approx(2.0 / 3.0 - w.t_delta - w.t_r)
                         .epsilon(1e-10)
                         .scale(1.0));
        CHECK(gap >= 0.0);
    }
    // leading behaviour u^2/15
    CHECK(greens::transverse_trace_gap(1e-4) ==
          doctest::Approx(1e-8 / 15.0).epsilon(1e-8));
}

TEST_CASE("Taylor and direct branches agree at the switch") {
    // evaluate the direct spherical-Bessel forms at the same u the Taylor
    // branch serves, so the comparison probes truncation and not the slope
    const double u = 0.25 * (1.0 - 1e-12);
    const auto w = greens::transverse_weights(u);
    const double s = std::sin(u), c = std::cos(u);
    const double j0 = s / u;
    const double j1u = (s - u * c) / (u * u * u);
    CHECK(w.t_delta == doctest::Approx(j0 - j1u).epsilon(1e-12));
    CHECK(std::fabs(w.t_r - (-j0 + 3.0 * j1u)) <= 5e-14);
}

TEST_CASE("coincidence limit closed form") {
    CHECK(greens::coincidence_limit(0.0) ==
          doctest::Approx(2.0 * pi / 9.0).epsilon(1e-14));
    CHECK(greens::coincidence_limit(0.5) == doctest::Approx(c_half).epsilon(1e-12));
    CHECK(greens::coincidence_limit(1.0) == doctest::Approx(c_one).epsilon(1e-12));
    CHECK(greens::coincidence_limit(5.0) == doctest::Approx(c_five).epsilon(1e-12));
    CHECK(greens::coincidence_limit(50.0) == doctest::Approx(c_fifty).epsilon(1e-10));
}

TEST_CASE("contracted kernel reproduces the coincidence limit at y = 0") {
    for (double tau : {0.5, 1.0, 5.0}) {
        const double k = greens::contracted_kernel({0.0, tau, 1.0}, 1e-11);
        CHECK(k == doctest::Approx(greens::coincidence_limit(tau)).epsilon(1e-9));
    }
}

TEST_CASE("contracted kernel is even in tau and decays with separation") {
    const double kp = greens::contracted_kernel({2.0, 1.5, 0.6}, 1e-11);
    const double km = greens::contracted_kernel({2.0, -1.5, 0.6}, 1e-11);
    CHECK(kp == doctest::Approx(km).epsilon(1e-12));
    const double near = std::fabs(greens::contracted_kernel({1.0, 0.3, 1.0}, 1e-11));
    const double far = std::fabs(greens::contracted_kernel({30.0, 0.3, 1.0}, 1e-11));
    CHECK(far < near);
}

TEST_CASE("bilinear kernel reduces to the contracted one") {
    const double direct = greens::contracted_kernel({1.2, 0.8, 0.4}, 1e-11);
    const double bil = greens::bilinear_kernel(1.2, 0.8, 1.0, 0.4, 0.4, 1e-11);
    CHECK(bil == doctest::Approx(direct).epsilon(1e-11));
}
