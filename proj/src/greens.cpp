#include "thermdec/greens.hpp"

#include <cmath>

#include "thermdec/bose.hpp"
#include "thermdec/constants.hpp"
#include "thermdec/errors.hpp"

namespace thermdec::greens {

namespace {

// Below this |u| the weights are evaluated by their even Taylor series; the
// direct Bessel forms lose digits to cancellation as u -> 0.
constexpr double weights_series_u0 = 0.25;

}  // namespace

TransverseWeights transverse_weights(double u) {
    u = std::fabs(u);
    TransverseWeights w;
    if (u < weights_series_u0) {
        const double u2 = u * u;
        w.t_delta = 2.0 / 3.0 +
                    u2 * (-2.0 / 15.0 + u2 * (1.0 / 140.0 + u2 * (-1.0 / 5670.0 + u2 / 399168.0)));
        w.t_r = u2 * (1.0 / 15.0 + u2 * (-1.0 / 210.0 + u2 * (1.0 / 7560.0 - u2 / 498960.0)));
        return w;
    }
    const double s = std::sin(u), c = std::cos(u);
    const double j0 = s / u;
    const double j1_over_u = (s - u * c) / (u * u * u);
    w.t_delta = j0 - j1_over_u;
    w.t_r = -j0 + 3.0 * j1_over_u;
    return w;
}

double transverse_trace_gap(double u) {
    u = std::fabs(u);
    if (u < weights_series_u0) {
        const double u2 = u * u;
        return u2 * (1.0 / 15.0 + u2 * (-1.0 / 420.0 + u2 * (1.0 / 22680.0 - u2 / 1995840.0)));
    }
    const double s = std::sin(u), c = std::cos(u);
    const double j1_over_u = (s - u * c) / (u * u * u);
    return 2.0 / 3.0 - 2.0 * j1_over_u;
}

double contracted_kernel(const KernelPoint& pt, double tol) {
    return bilinear_kernel(pt.y_hat, pt.tau_hat, 1.0, pt.cos_pr, pt.cos_pr, tol);
}

double bilinear_kernel(double y_hat, double tau_hat,
                       double cos_ab, double cos_ar, double cos_br,
                       double tol) {
    if (!(y_hat >= 0.0)) throw config_error("bilinear_kernel: y_hat must be non-negative");
    if (std::fabs(cos_ab) > 1.0 + 1e-12 || std::fabs(cos_ar) > 1.0 + 1e-12 ||
        std::fabs(cos_br) > 1.0 + 1e-12)
        throw config_error("bilinear_kernel: direction cosines must lie in [-1, 1]");
    const double tau = std::fabs(tau_hat);  // kernel is even in the lag
    const double crr = cos_ar * cos_br;
    auto phi = [&](double k) {
        const TransverseWeights w = transverse_weights(k * y_hat);
        return std::cos(k * tau) * (cos_ab * w.t_delta + crr * w.t_r);
    };
    // |T_delta| <= 2/3 and |T_delta + T_r| <= 2/3, so 1.2 covers any cosines
    const auto res = bose::planck_adaptive(1, phi, 1.2, tau + y_hat, tol);
    return (2.0 / constants::pi) * res.value;
}

double coincidence_limit(double tau_hat, double tol) {
    const double tau = std::fabs(tau_hat);
    const auto res = bose::bose_series({1, bose::Trig::cos, tau}, tol);
    return (4.0 / (3.0 * constants::pi)) * res.value;
}

}  // namespace thermdec::greens
