#include "thermdec/units.hpp"

#include <cmath>
#include <string>

#include "thermdec/constants.hpp"
#include "thermdec/errors.hpp"

namespace thermdec::units {

namespace {

double norm3(const std::array<double, 3>& a) {
    return std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
}

double dot3(const std::array<double, 3>& a, const std::array<double, 3>& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

}  // namespace

double thermal_wavelength_m(double temperature_k) {
    if (!(temperature_k > 0.0))
        throw config_error("temperature must be positive, got " + std::to_string(temperature_k));
    return constants::hbar_c_ev_m / (constants::k_boltzmann_ev_k * temperature_k);
}

DimensionlessPoint to_dimensionless(const PhysicalConfig& cfg) {
    if (!(cfg.mass_me > 0.0))
        throw config_error("mass must be positive, got " + std::to_string(cfg.mass_me));
    if (cfg.charge_number == 0)
        throw config_error("charge number must be nonzero");
    if (!(cfg.time_s >= 0.0))
        throw config_error("time must be non-negative, got " + std::to_string(cfg.time_s));

    const double l_t = thermal_wavelength_m(cfg.temperature_k);
    const double v = norm3(cfg.momentum);
    if (!(v < constants::speed_ratio_cap))
        throw config_error("|p|/(m c) must stay below " + std::to_string(constants::speed_ratio_cap) +
                           ", got " + std::to_string(v));

    DimensionlessPoint pt;
    pt.tau_hat = constants::speed_of_light * cfg.time_s / l_t;
    pt.y_hat = norm3(cfg.separation_m) / l_t;
    pt.v = v;
    pt.alpha_eff = double(cfg.charge_number) * double(cfg.charge_number) * constants::fine_structure;
    const double ysep = norm3(cfg.separation_m);
    pt.cos_py = (v > 0.0 && ysep > 0.0) ? dot3(cfg.momentum, cfg.separation_m) / (v * ysep) : 0.0;
    // guard against rounding pushing the cosine out of range
    if (pt.cos_py > 1.0) pt.cos_py = 1.0;
    if (pt.cos_py < -1.0) pt.cos_py = -1.0;
    pt.l_thermal_m = l_t;
    return pt;
}

PhysicalConfig from_dimensionless(const DimensionlessPoint& pt,
                                  double temperature_k,
                                  double mass_me,
                                  int charge_number) {
    if (!(pt.tau_hat >= 0.0) || !(pt.y_hat >= 0.0))
        throw config_error("tau_hat and y_hat must be non-negative");
    if (!(pt.v >= 0.0) || !(pt.v < constants::speed_ratio_cap))
        throw config_error("speed ratio out of range in from_dimensionless");
    if (std::fabs(pt.cos_py) > 1.0)
        throw config_error("cos_py must lie in [-1, 1]");
    if (charge_number == 0)
        throw config_error("charge number must be nonzero");
    if (!(mass_me > 0.0))
        throw config_error("mass must be positive");

    const double l_t = thermal_wavelength_m(temperature_k);
    PhysicalConfig cfg;
    cfg.temperature_k = temperature_k;
    cfg.mass_me = mass_me;
    cfg.charge_number = charge_number;
    cfg.time_s = pt.tau_hat * l_t / constants::speed_of_light;
    // canonical frame: momentum along +z, separation in the x-z plane
    cfg.momentum = {0.0, 0.0, pt.v};
    const double y = pt.y_hat * l_t;
    const double c = pt.cos_py;
    const double s = std::sqrt(std::fmax(0.0, 1.0 - c * c));
    cfg.separation_m = {y * s, 0.0, y * c};
    return cfg;
}

}  // namespace thermdec::units
