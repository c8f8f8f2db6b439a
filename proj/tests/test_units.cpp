#include <doctest.h>

#include <cmath>

#include "thermdec/constants.hpp"
#include "thermdec/errors.hpp"
#include "thermdec/units.hpp"

using namespace thermdec;

TEST_CASE("thermal wavelength at room temperature") {
    // hbar c / (k_B T) at 300 K, cross-checked by hand from the CODATA inputs
    const double l = units::thermal_wavelength_m(300.0);
    CHECK(l == doctest::Approx(7.63294839987e-6).epsilon(1e-9));
}

TEST_CASE("thermal wavelength scales as 1/T") {
    const double l300 = units::thermal_wavelength_m(300.0);
    const double l600 = units::thermal_wavelength_m(600.0);
    CHECK(l300 / l600 == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("to_dimensionless reduces a lab configuration") {
    units::PhysicalConfig pc;
    pc.temperature_k = 300.0;
    pc.mass_me = 1.0;
    pc.charge_number = 2;
    pc.momentum = {0.0, 0.0, 0.01};
    const double l = units::thermal_wavelength_m(300.0);
    pc.separation_m = {0.0, 0.0, 3.0 * l};
    pc.time_s = 5.0 * l / constants::speed_of_light;

    const auto pt = units::to_dimensionless(pc);
    CHECK(pt.tau_hat == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(pt.y_hat == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(pt.v == doctest::Approx(0.01).epsilon(1e-14));
    CHECK(pt.alpha_eff == doctest::Approx(4.0 * constants::fine_structure).epsilon(1e-14));
    CHECK(pt.cos_py == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(pt.l_thermal_m == doctest::Approx(l).epsilon(1e-14));
}

TEST_CASE("cos_py vanishes with either vector") {
    units::PhysicalConfig pc;
    pc.momentum = {0.0, 0.0, 0.0};
    pc.separation_m = {1e-6, 0.0, 0.0};
    CHECK(units::to_dimensionless(pc).cos_py == 0.0);

    pc.momentum = {0.0, 0.0, 0.01};
    pc.separation_m = {0.0, 0.0, 0.0};
    CHECK(units::to_dimensionless(pc).cos_py == 0.0);
}

TEST_CASE("round trip through from_dimensionless") {
    units::DimensionlessPoint pt;
    pt.tau_hat = 2.5;
    pt.y_hat = 0.75;
    pt.v = 0.02;
    pt.alpha_eff = constants::fine_structure;
    pt.cos_py = 0.3;
    const auto pc = units::from_dimensionless(pt, 150.0, 1.0, 1);
    const auto back = units::to_dimensionless(pc);
    CHECK(back.tau_hat == doctest::Approx(pt.tau_hat).epsilon(1e-12));
    CHECK(back.y_hat == doctest::Approx(pt.y_hat).epsilon(1e-12));
    CHECK(back.v == doctest::Approx(pt.v).epsilon(1e-12));
    CHECK(back.cos_py == doctest::Approx(pt.cos_py).epsilon(1e-10));
}

TEST_CASE("validation rejects bad inputs") {
    units::PhysicalConfig pc;
    pc.temperature_k = -1.0;
    CHECK_THROWS_AS((void)units::to_dimensionless(pc), config_error);

    pc = units::PhysicalConfig{};
    pc.mass_me = 0.0;
    CHECK_THROWS_AS((void)units::to_dimensionless(pc), config_error);

    pc = units::PhysicalConfig{};
    pc.charge_number = 0;
    CHECK_THROWS_AS((void)units::to_dimensionless(pc), config_error);

    pc = units::PhysicalConfig{};
    pc.momentum = {0.0, 0.0, 0.5};  // above the speed cap
    CHECK_THROWS_AS((void)units::to_dimensionless(pc), config_error);

    pc = units::PhysicalConfig{};
    pc.time_s = -1.0;
    CHECK_THROWS_AS((void)units::to_dimensionless(pc), config_error);
}
