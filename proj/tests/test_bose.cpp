#include <doctest.h>

#include <cmath>

#include "thermdec/bose.hpp"
#include "thermdec/errors.hpp"

using namespace thermdec;
using bose::BoseIntegralSpec;
using bose::Trig;

namespace {
// int_0^inf sin(a k)/(e^k - 1) dk = (pi/2) coth(pi a) - 1/(2a)
constexpr double cothid_01 = 0.16342115746508686;
constexpr double cothid_1 = 1.0766740474685812;
constexpr double cothid_10 = 1.5207963267948966;
}  // namespace

TEST_CASE("series engine matches the coth identity") {
    for (const auto [a, want] : {std::pair{0.1, cothid_01},
                                 std::pair{1.0, cothid_1},
                                 std::pair{10.0, cothid_10}}) {
        const auto got = bose::bose_series({0, Trig::sin, a}, 1e-13);
        CHECK(got.value == doctest::Approx(want).epsilon(1e-13));
        CHECK(std::fabs(got.value - want) <= 10.0 * got.abs_error + 1e-15);
        CHECK(bose::coth_sin_identity(a) == doctest::Approx(want).epsilon(1e-13));
    }
}

TEST_CASE("zeta values from the weight integrals") {
    // int_0^inf k/(e^k-1) = zeta(2), int k^3/(e^k-1) = 6 zeta(4) = pi^4/15
    const auto z2 = bose::bose_series({1, Trig::constant, 0.0}, 1e-13);
    CHECK(z2.value == doctest::Approx(1.6449340668482264).epsilon(1e-14));
    const auto z4 = bose::bose_series({3, Trig::constant, 0.0}, 1e-13);
    CHECK(z4.value == doctest::Approx(6.4939394022668291).epsilon(1e-14));
}

TEST_CASE("series agrees with adaptive quadrature across the catalog") {
    const double tol = 1e-11;
    for (const auto spec : {BoseIntegralSpec{0, Trig::sin, 0.7},
                            BoseIntegralSpec{1, Trig::sin, 3.0},
                            BoseIntegralSpec{1, Trig::cos, 0.4},
                            BoseIntegralSpec{2, Trig::cos, 5.0},
                            BoseIntegralSpec{-1, Trig::one_minus_cos, 2.0},
                            BoseIntegralSpec{0, Trig::one_minus_cos, 0.3},
                            BoseIntegralSpec{1, Trig::one_minus_cos, 12.0},
                            BoseIntegralSpec{2, Trig::constant, 0.0}}) {
        const auto s = bose::bose_series(spec, tol);
        const auto q = bose::bose_adaptive(spec, tol);
        CHECK(std::fabs(s.value - q.value) <=
              10.0 * (s.abs_error + q.abs_error) + 1e-12 * std::fabs(s.value) + 1e-14);
    }
}

TEST_CASE("one_minus_cos splits into constant minus cos") {
    const auto omc = bose::bose_series({1, Trig::one_minus_cos, 0.8}, 1e-13);
    const auto cst = bose::bose_series({1, Trig::constant, 0.0}, 1e-13);
    const auto cos = bose::bose_series({1, Trig::cos, 0.8}, 1e-13);
    CHECK(omc.value == doctest::Approx(cst.value - cos.value).epsilon(1e-13));
}

TEST_CASE("reported error bounds hold against tight recomputation") {
    for (const auto spec : {BoseIntegralSpec{0, Trig::sin, 1.3},
                            BoseIntegralSpec{-1, Trig::one_minus_cos, 4.0},
                            BoseIntegralSpec{1, Trig::cos, 2.2}}) {
        const auto loose = bose::bose_series(spec, 1e-6);
        const auto tight = bose::bose_series(spec, 1e-13);
        CHECK(std::fabs(loose.value - tight.value) <= loose.abs_error + 1e-14);
    }
}

TEST_CASE("integrability rules are enforced") {
    CHECK_THROWS_AS((void)bose::bose_series({-1, Trig::sin, 1.0}, 1e-10), config_error);
    CHECK_THROWS_AS((void)bose::bose_series({0, Trig::cos, 1.0}, 1e-10), config_error);
    CHECK_THROWS_AS((void)bose::bose_series({0, Trig::constant, 0.0}, 1e-10), config_error);
    CHECK_THROWS_AS((void)bose::bose_series({-2, Trig::one_minus_cos, 1.0}, 1e-10),
                    config_error);
    CHECK_THROWS_AS((void)bose::bose_series({4, Trig::sin, 1.0}, 1e-10), config_error);
    CHECK_NOTHROW((void)bose::bose_series({-1, Trig::one_minus_cos, 1.0}, 1e-10));
    CHECK_NOTHROW((void)bose::bose_series({1, Trig::cos, 1.0}, 1e-10));
}

TEST_CASE("zero frequency edge cases") {
    CHECK(bose::bose_series({0, Trig::sin, 0.0}, 1e-12).value == 0.0);
    CHECK(bose::bose_series({1, Trig::one_minus_cos, 0.0}, 1e-12).value == 0.0);
}

TEST_CASE("planck factor Taylor branch is continuous") {
    const double k0 = bose::planck_taylor_k0;
    const double below = bose::planck_factor(k0 * (1.0 - 1e-9));
    const double above = bose::planck_factor(k0 * (1.0 + 1e-9));
    CHECK(std::fabs(below - above) <= 1e-12);
    CHECK(bose::planck_factor(0.0) == 1.0);
}

TEST_CASE("adaptive_gk integrates a smooth function") {
    const auto r = bose::adaptive_gk([](double x) { return std::sin(x); }, 0.0,
                                     3.141592653589793, 1e-12, 10000);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(r.abs_error <= 1e-10);
}
