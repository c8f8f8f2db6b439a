#include "thermdec/interference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "thermdec/bose.hpp"
#include "thermdec/constants.hpp"
#include "thermdec/decoherence.hpp"
#include "thermdec/errors.hpp"
#include "thermdec/greens.hpp"

namespace thermdec::interference {

namespace {

constexpr double pi = constants::pi;

double norm3(const std::array<double, 3>& a) {
    return std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
}

// T_delta + T_r = 2 j1(x)/x, the kernel contraction along a common axis
double trace_weight(double x) {
    return 2.0 / 3.0 - greens::transverse_trace_gap(x);
}

// 8-point Gauss-Legendre on [-1, 1], positive half
constexpr double gl8_x[4] = {0.18343464249564980, 0.52553240991632899,
                             0.79666647741362674, 0.96028985649753623};
constexpr double gl8_w[4] = {0.36268378337836198, 0.31370664587788729,
                             0.22238103445337447, 0.10122853629037626};

// int_{w1}^{w2} [tw(k|d w + s|) + tw(k|d w - s|)] dw by composite GL8 with
// at most ~2 radians of phase per panel
double cross_w_integral(double k, double d, double s, double w1, double w2) {
    const double span = w2 - w1;
    if (!(span > 0.0)) return 0.0;
    const double phase = std::fabs(k * d) * span;
    const long n = 1 + long(phase / 2.0);
    const double h = span / double(n);
    double acc = 0.0;
    for (long i = 0; i < n; ++i) {
        const double c = w1 + (double(i) + 0.5) * h;
        for (int j = 0; j < 4; ++j) {
            const double dx = 0.5 * h * gl8_x[j];
            for (double w : {c - dx, c + dx}) {
                const double g = d * w;
                acc += 0.5 * h * gl8_w[j] * (trace_weight(k * (g + s)) + trace_weight(k * (g - s)));
            }
        }
    }
    return acc;
}

struct CollinearPair {
    double a1, a2;  // signed speeds along the common axis
};

CollinearPair reduce_collinear(const TwoPacketConfig& cfg) {
    const double n1 = norm3(cfg.v1), n2 = norm3(cfg.v2);
    if (!(n1 < constants::speed_ratio_cap) || !(n2 < constants::speed_ratio_cap))
        throw config_error("packet speeds must stay below the speed cap");
    if (n1 == 0.0 && n2 == 0.0) return {0.0, 0.0};
    const auto& axis_src = (n1 >= n2) ? cfg.v1 : cfg.v2;
    const double an = std::fmax(n1, n2);
    const double ex = axis_src[0] / an, ey = axis_src[1] / an, ez = axis_src[2] / an;
    const double a1 = cfg.v1[0] * ex + cfg.v1[1] * ey + cfg.v1[2] * ez;
    const double a2 = cfg.v2[0] * ex + cfg.v2[1] * ey + cfg.v2[2] * ez;
    // reject any transverse component; the cross term is only reduced to one
    // spatial direction for collinear motion
    const double t1 = std::sqrt(std::fmax(0.0, n1 * n1 - a1 * a1));
    const double t2 = std::sqrt(std::fmax(0.0, n2 * n2 - a2 * a2));
    if (t1 > 1e-9 * std::fmax(n1, 1e-300) || t2 > 1e-9 * std::fmax(n2, 1e-300))
        throw config_error("s12_first_principles requires collinear packet velocities");
    return {a1, a2};
}

}  // namespace

double s12_closed(double tau_hat, double dv, double alpha_eff) {
    if (!(tau_hat >= 0.0)) throw config_error("s12_closed: tau_hat must be non-negative");
    if (!(dv >= 0.0)) throw config_error("s12_closed: dv must be non-negative");
    return (2.0 / (3.0 * pi)) * alpha_eff * dv * dv * decoherence::log_sinh_growth(tau_hat);
}

S12Result s12_first_principles(const TwoPacketConfig& cfg, double tol) {
    if (!(cfg.tau_hat >= 0.0)) throw config_error("tau_hat must be non-negative");
    if (!(cfg.alpha_eff >= 0.0)) throw config_error("alpha_eff must be non-negative");
    if (!(tol > 0.0)) throw config_error("tol must be positive");
    if (cfg.v1 == cfg.v2 || cfg.tau_hat == 0.0 || cfg.alpha_eff == 0.0) return {0.0, 0.0};
    const auto [a1, a2] = reduce_collinear(cfg);
    if (a1 == a2) return {0.0, 0.0};

    const double T = cfg.tau_hat;
    const double dvel = a1 - a2, svel = a1 + a2;
    const double kernel_tol = tol / (4.0 * std::fmax(1.0, T));
    const double speed_sum = std::fabs(a1) + std::fabs(a2);
    const double phi_bound = (4.0 / 3.0) * T * speed_sum * speed_sum;

    // S12 = (alpha/2) int_0^T du (2/pi) int dk k/(e^k-1) cos(k u) Psi(k, u)
    // Psi  = 2 (T-u) [a1^2 tw(k u a1) + a2^2 tw(k u a2)]
    //        - 2 a1 a2 int_{u/2}^{T-u/2} [tw(k|g+|) + tw(k|g-|)] dw
    // with g+- = (a1 - a2) w +- (a1 + a2) u / 2.  For a1 = a2 the bracket
    // cancels pointwise, which is what makes the equal-velocity case exact.
    auto f_outer = [&](double u) {
        const double w1 = 0.5 * u, w2 = T - 0.5 * u;
        auto phi = [&](double k) {
            const double self = 2.0 * (T - u) *
                                (a1 * a1 * trace_weight(k * u * a1) +
                                 a2 * a2 * trace_weight(k * u * a2));
            const double cross = 2.0 * a1 * a2 *
                                 cross_w_integral(k, dvel, 0.5 * svel * u, w1, w2);
            return std::cos(k * u) * (self - cross);
        };
        const double freq = u + speed_sum * T;
        const auto res = bose::planck_adaptive(1, phi, phi_bound, freq, kernel_tol);
        return (2.0 / pi) * res.value;
    };

    const auto outer = bose::adaptive_gk(f_outer, 0.0, T, 0.25 * tol);
    const double half_alpha = 0.5 * cfg.alpha_eff;
    double s12 = half_alpha * outer.value;
    const double err = half_alpha * (outer.abs_error + (2.0 / pi) * kernel_tol * T);
    if (s12 < 0.0 && s12 > -10.0 * std::fmax(err, 1e-300)) s12 = 0.0;
    return {s12, err};
}

ScreenPattern screen_pattern(const TwoPacketConfig& cfg,
                             const std::vector<double>& screen_grid) {
    if (screen_grid.empty()) throw config_error("screen_pattern: empty grid");
    if (!(cfg.packet_width > 0.0)) throw config_error("screen_pattern: packet_width must be positive");
    if (!(cfg.tau_hat >= 0.0)) throw config_error("screen_pattern: tau_hat must be non-negative");
    const auto [a1, a2] = reduce_collinear(cfg);

    double s12;
    if (cfg.s12_override) {
        s12 = *cfg.s12_override;
        if (!(s12 >= 0.0)) throw config_error("screen_pattern: s12_override must be non-negative");
    } else {
        s12 = s12_closed(cfg.tau_hat, std::fabs(a1 - a2), cfg.alpha_eff);
    }

    const double sig = cfg.packet_width;
    const double c1 = cfg.tau_hat * a1, c2 = cfg.tau_hat * a2;
    const double norm = 1.0 / std::sqrt(2.0 * pi * sig * sig);
    const double damp = std::exp(-s12);

    ScreenPattern out;
    out.x = screen_grid;
    const std::size_t n = screen_grid.size();
    out.density.resize(n);
    out.rho1.resize(n);
    out.rho2.resize(n);
    out.cross.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = screen_grid[i];
        const double g1 = x - c1, g2 = x - c2;
        const double r1 = cfg.amp1 * cfg.amp1 * norm * std::exp(-g1 * g1 / (2.0 * sig * sig));
        const double r2 = cfg.amp2 * cfg.amp2 * norm * std::exp(-g2 * g2 / (2.0 * sig * sig));
        // phase difference of free packets: k2 x - k1 x - (E2 - E1) t in
        // reduced units, with k = phase_scale * v and E t -> phase_scale v^2 tau / 2
        const double phase = cfg.phase_scale *
                             ((a2 - a1) * x - 0.5 * (a2 * a2 - a1 * a1) * cfg.tau_hat);
        const double cr = 2.0 * std::sqrt(r1 * r2) * std::cos(phase) * damp;
        out.rho1[i] = r1;
        out.rho2[i] = r2;
        out.cross[i] = cr;
        out.density[i] = r1 + r2 + cr;
    }
    out.s12 = s12;
    out.visibility = damp;
    const double d = std::fabs(c1 - c2);
    out.overlap = std::exp(-d * d / (8.0 * sig * sig));

    // contrast over one central fringe period, from the sampled grid
    const double dk = cfg.phase_scale * std::fabs(a2 - a1);
    if (dk > 0.0) {
        const double period = 2.0 * pi / dk;
        const double mid = 0.5 * (c1 + c2);
        double dmax = -1.0, dmin = std::numeric_limits<double>::max();
        for (std::size_t i = 0; i < n; ++i) {
            if (std::fabs(screen_grid[i] - mid) <= 0.5 * period) {
                dmax = std::fmax(dmax, out.density[i]);
                dmin = std::fmin(dmin, out.density[i]);
            }
        }
        if (dmax > 0.0 && dmin < dmax && dmax + dmin > 0.0)
            out.fringe_visibility = (dmax - dmin) / (dmax + dmin);
    }
    return out;
}

}  // namespace thermdec::interference
