#include "thermdec/decoherence.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "thermdec/bose.hpp"
#include "thermdec/constants.hpp"
#include "thermdec/errors.hpp"
#include "thermdec/greens.hpp"

namespace thermdec::decoherence {

namespace {

constexpr double pi = constants::pi;

void validate_point(const DecoherencePoint& pt) {
    if (!(pt.tau_hat >= 0.0)) throw config_error("tau_hat must be non-negative");
    if (!(pt.y_hat >= 0.0)) throw config_error("y_hat must be non-negative");
    if (!(pt.v >= 0.0) || !(pt.v < constants::speed_ratio_cap))
        throw config_error("speed ratio must lie in [0, " +
                           std::to_string(constants::speed_ratio_cap) + "), got " +
                           std::to_string(pt.v));
    if (!(pt.alpha_eff >= 0.0)) throw config_error("alpha_eff must be non-negative");
    if (std::fabs(pt.cos_py) > 1.0) throw config_error("cos_py must lie in [-1, 1]");
}

}  // namespace

double log_sinh_growth(double t) {
    if (!(t >= 0.0)) throw config_error("log_sinh_growth: t must be non-negative");
    const double x = pi * t;
    if (x < 0.16) {
        const double x2 = x * x;
        // ln(sinh x / x) = ln(1 + x^2/6 + x^4/120 + ...); next term < 1e-15 here
        return std::log1p(x2 * (1.0 / 6.0 + x2 * (1.0 / 120.0 + x2 * (1.0 / 5040.0 + x2 / 362880.0))));
    }
    if (x < 350.0) return std::log(std::sinh(x) / x);
    // sinh x = e^x (1 - e^{-2x})/2 without overflow
    return x - std::log(2.0 * x) + std::log1p(-std::exp(-2.0 * x));
}

DecoherenceResult s_exact(const DecoherencePoint& pt, double tol) {
    validate_point(pt);
    if (!(tol > 0.0)) throw config_error("s_exact: tol must be positive");
    const double tau = pt.tau_hat, y = pt.y_hat, v = pt.v;
    if (tau == 0.0 || pt.alpha_eff == 0.0 || v == 0.0) return {0.0, 0.0};

    // Two branches move with the same velocity v along p while held y apart.
    // With u = t - t', the subtracted two-time integrand is even in u, so
    //   S = alpha v^2 * 2 int_0^tau (tau - u) F(u) du,
    //   F(u) = K(v u, u; p.p) - K(r+, u)/2 - K(r-, u)/2,  r+- = u v p +- y e.
    // The three kernels share one detailed-balance quadrature per u.
    const double cpy = pt.cos_py;
    const double kernel_tol = tol / (8.0 * std::fmax(1.0, tau * tau));

    auto f_outer = [&](double u) {
        const double duv = u * v;
        const double rp = std::sqrt(duv * duv + y * y + 2.0 * duv * y * cpy);
        const double rm = std::sqrt(duv * duv + y * y - 2.0 * duv * y * cpy);
        const double cp2 = rp > 0.0 ? ((duv + y * cpy) / rp) * ((duv + y * cpy) / rp) : 1.0;
        const double cm2 = rm > 0.0 ? ((duv - y * cpy) / rm) * ((duv - y * cpy) / rm) : 1.0;
        auto phi = [&](double k) {
            const greens::TransverseWeights wa = greens::transverse_weights(k * duv);
            const greens::TransverseWeights wp = greens::transverse_weights(k * rp);
            const greens::TransverseWeights wm = greens::transverse_weights(k * rm);
            const double on_branch = wa.t_delta + wa.t_r;
            const double cross = 0.5 * (wp.t_delta + cp2 * wp.t_r) + 0.5 * (wm.t_delta + cm2 * wm.t_r);
            return std::cos(k * u) * (on_branch - cross);
        };
        const double freq = u + std::fmax(duv, std::fmax(rp, rm));
        const auto res = bose::planck_adaptive(1, phi, 2.0, freq, kernel_tol);
        return (tau - u) * (2.0 / pi) * res.value;
    };

    const auto outer = bose::adaptive_gk(f_outer, 0.0, tau, 0.25 * tol);
    // each inner quadrature is good to kernel_tol, integrated against (tau-u)
    const double inner_budget = (2.0 / pi) * kernel_tol * 0.5 * tau * tau;
    double s = pt.alpha_eff * v * v * 2.0 * outer.value;
    const double err = pt.alpha_eff * v * v * 2.0 * (outer.abs_error + inner_budget);
    if (s < 0.0) {
        if (s < -10.0 * std::fmax(err, 1e-300))
            throw budget_error("s_exact: negative exponent beyond the error budget");
        s = 0.0;
    }
    return {s, err};
}

DecoherenceResult s_reduced(const DecoherencePoint& pt, double tol) {
    validate_point(pt);
    if (!(tol > 0.0)) throw config_error("s_reduced: tol must be positive");
    const double tau = pt.tau_hat, y = pt.y_hat;
    if (tau == 0.0 || y == 0.0 || pt.v == 0.0 || pt.alpha_eff == 0.0) return {0.0, 0.0};

    auto phi = [&](double k) {
        const double sh = std::sin(0.5 * k * tau);
        return 2.0 * sh * sh * 2.0 * greens::transverse_trace_gap(k * y);
    };
    const auto res = bose::planck_adaptive(-1, phi, 3.0, tau + y, tol);
    const double scale = pt.alpha_eff * pt.v * pt.v * (2.0 / pi);
    double s = scale * res.value;
    const double err = scale * res.abs_error;
    if (s < 0.0) {
        if (s < -10.0 * std::fmax(err, 1e-300))
            throw budget_error("s_reduced: negative exponent beyond the error budget");
        s = 0.0;
    }
    return {s, err};
}

double s_large_y(double tau_hat, double v, double alpha_eff) {
    return (4.0 / (3.0 * pi)) * alpha_eff * v * v * log_sinh_growth(tau_hat);
}

double s_small_t_small_y(const DecoherencePoint& pt) {
    const double t = pt.tau_hat, y = pt.y_hat;
    return (2.0 * pi * pi * pi / 225.0) * pt.alpha_eff * pt.v * pt.v * t * t * y * y;
}

double s_stationary(double y_hat, double v, double alpha_eff, double tol) {
    if (!(y_hat >= 0.0)) throw config_error("s_stationary: y_hat must be non-negative");
    if (y_hat == 0.0) return 0.0;
    auto f = [y_hat](double mu) { return (1.0 - mu * mu) * log_sinh_growth(y_hat * mu); };
    const auto res = bose::adaptive_gk(f, 0.0, 1.0, tol);
    return (2.0 / pi) * alpha_eff * v * v * res.value;
}

Regime regime_classify(double tau_hat, double y_hat) {
    const auto small = [](double x) { return x < 0.5; };
    const auto large = [](double x) { return x > 2.0; };
    if (small(tau_hat) && large(y_hat)) return Regime::small_t_large_y;
    if (large(tau_hat) && large(y_hat)) return Regime::large_t_large_y;
    if (small(tau_hat) && small(y_hat)) return Regime::small_t_small_y;
    if (large(tau_hat) && small(y_hat)) return Regime::large_t_small_y;
    return Regime::general;
}

const char* regime_name(Regime r) {
    switch (r) {
        case Regime::small_t_large_y: return "small_t_large_y";
        case Regime::large_t_large_y: return "large_t_large_y";
        case Regime::small_t_small_y: return "small_t_small_y";
        case Regime::large_t_small_y: return "large_t_small_y";
        case Regime::general: return "general";
    }
    return "?";
}

double regime_closed_form(Regime r, const DecoherencePoint& pt) {
    switch (r) {
        case Regime::small_t_large_y:
        case Regime::large_t_large_y:
            // the log-sinh law holds uniformly in tau once y is large
            return s_large_y(pt.tau_hat, pt.v, pt.alpha_eff);
        case Regime::small_t_small_y:
            return s_small_t_small_y(pt);
        case Regime::large_t_small_y:
            return s_stationary(pt.y_hat, pt.v, pt.alpha_eff);
        case Regime::general:
            return std::numeric_limits<double>::quiet_NaN();
    }
    return std::numeric_limits<double>::quiet_NaN();
}

double n_particle_exponent(const std::vector<ChargedParticle>& particles,
                           double tau_hat, double alpha_unit) {
    if (particles.empty()) throw config_error("n_particle_exponent: empty ensemble");
    if (!(tau_hat >= 0.0)) throw config_error("n_particle_exponent: tau_hat must be non-negative");
    double qx = 0.0, qy = 0.0, qz = 0.0;
    for (const auto& p : particles) {
        const double vn = std::sqrt(p.velocity[0] * p.velocity[0] +
                                    p.velocity[1] * p.velocity[1] +
                                    p.velocity[2] * p.velocity[2]);
        if (!(vn < constants::speed_ratio_cap))
            throw config_error("n_particle_exponent: particle speed exceeds the cap");
        qx += p.charge_number * p.velocity[0];
        qy += p.charge_number * p.velocity[1];
        qz += p.charge_number * p.velocity[2];
    }
    const double q2 = qx * qx + qy * qy + qz * qz;
    return (4.0 / (3.0 * pi)) * alpha_unit * log_sinh_growth(tau_hat) * q2;
}

}  // namespace thermdec::decoherence
