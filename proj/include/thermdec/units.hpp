#pragma once

#include <array>

namespace thermdec::units {

// Laboratory-frame description of a single charged wave packet immersed in a
// photon bath.  Momentum is given as p/(m c) per component; the separation is
// the spatial offset between the interfering branches in metres.
struct PhysicalConfig {
    double temperature_k = 300.0;  // bath temperature [K], > 0
    double mass_me       = 1.0;    // particle mass in electron masses, > 0
    int charge_number    = 1;      // charge in units of e, nonzero
    std::array<double, 3> momentum{0.0, 0.0, 0.0};      // p/(m c)
    std::array<double, 3> separation_m{0.0, 0.0, 0.0};  // branch offset [m]
    double time_s = 0.0;           // elapsed lab time [s], >= 0
};

// Everything the kernels need, with lengths in units of the thermal photon
// wavelength l_T = hbar c / (k_B T) and times in units of l_T / c.
struct DimensionlessPoint {
    double tau_hat    = 0.0;  // c t / l_T
    double y_hat      = 0.0;  // |separation| / l_T
    double v          = 0.0;  // |p| / (m c)
    double alpha_eff  = 0.0;  // z^2 * fine structure constant
    double cos_py     = 0.0;  // angle between momentum and separation
    double l_thermal_m = 0.0; // l_T [m], carried along for reporting
};

double thermal_wavelength_m(double temperature_k);

// Validates ranges (temperature > 0, |p|/(m c) below the speed cap, ...) and
// reduces to kernel variables.  cos_py is 0 when either vector vanishes.
DimensionlessPoint to_dimensionless(const PhysicalConfig& cfg);

// Reconstructs a physical configuration at the given anchor temperature and
// mass.  The output uses a canonical frame: momentum along +z, separation in
// the x-z plane with a non-negative x component.  Round-trips through
// to_dimensionless reproduce tau_hat, y_hat, v, alpha_eff and cos_py.
PhysicalConfig from_dimensionless(const DimensionlessPoint& pt,
                                  double temperature_k,
                                  double mass_me,
                                  int charge_number);

}  // namespace thermdec::units
