#pragma once

#include <array>
#include <optional>
#include <vector>

namespace thermdec::interference {

// Two wave packets launched from a common origin with velocities v1, v2
// (units of c), watched for tau_hat.  packet_width is the Gaussian width on
// the screen axis in thermal lengths; phase_scale = m c^2 / (k_B T) converts
// velocity differences into de Broglie phase per thermal length.
struct TwoPacketConfig {
    std::array<double, 3> v1{0.0, 0.0, 0.0};
    std::array<double, 3> v2{0.0, 0.0, 0.0};
    double tau_hat = 1.0;
    double alpha_eff = 0.0;
    double packet_width = 1.0;
    double phase_scale = 0.0;
    double amp1 = 1.0;
    double amp2 = 1.0;
    // when set, screen_pattern uses this exponent instead of computing one
    std::optional<double> s12_override;
};

// Overlapping-packet law: S12 = (2/(3 pi)) alpha dv^2 L(tau), with L the
// log-sinh growth function and dv = |v1 - v2|.
double s12_closed(double tau_hat, double dv, double alpha_eff);

struct S12Result {
    double s12 = 0.0;
    double abs_error = 0.0;
};

// Mutual exponent from the full double-time structure: two self kernels and
// a genuinely two-dimensional cross term over (t - t', (t + t')/2), with the
// packet trajectories kept in the kernel arguments.  Requires collinear
// velocities; equal velocities give exactly zero.
S12Result s12_first_principles(const TwoPacketConfig& cfg, double tol = 1e-8);

struct ScreenPattern {
    std::vector<double> x;
    std::vector<double> density;   // rho1 + rho2 + cross
    std::vector<double> rho1;
    std::vector<double> rho2;
    std::vector<double> cross;     // 2 sqrt(rho1 rho2) cos(phase) e^{-S12}
    double s12 = 0.0;
    double visibility = 0.0;       // e^{-S12}
    double overlap = 0.0;          // envelope overlap exp(-d^2 / (8 sigma^2))
    // contrast read off the sampled density over one central fringe period;
    // unset when the packets share a velocity and no fringe exists
    std::optional<double> fringe_visibility;
};

ScreenPattern screen_pattern(const TwoPacketConfig& cfg,
                             const std::vector<double>& screen_grid);

}  // namespace thermdec::interference
