#include "thermdec/oracles.hpp"

#include <atomic>
#include <cmath>
#include <thread>
#include <vector>

#include "thermdec/constants.hpp"
#include "thermdec/errors.hpp"

namespace thermdec::oracles {

namespace {

constexpr double pi = constants::pi;
constexpr long mc_block = 65536;

// splitmix64; one independent stream per sample index
std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

struct SampleRng {
    std::uint64_t state;
    explicit SampleRng(std::uint64_t seed, std::uint64_t index)
        : state(mix64(seed ^ mix64(index + 1))) {}
    double u01() {
        state = mix64(state);
        return double(state >> 11) * 0x1.0p-53;
    }
};

struct BlockSum {
    double sum = 0.0;
    double sumsq = 0.0;
};

// kappa ~ kappa e^{-n kappa} mixture: pick n with weight n^{-2}/zeta(2),
// then Gamma(2, 1/n)
double draw_kappa(SampleRng& rng) {
    constexpr double zeta2 = 1.6449340668482264;
    const double target = rng.u01() * zeta2;
    double cum = 0.0;
    long n = 0;
    while (n < 1000000) {
        ++n;
        cum += 1.0 / (double(n) * double(n));
        if (cum >= target) break;
    }
    double u1 = rng.u01(), u2 = rng.u01();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    if (u2 <= 0.0) u2 = 0x1.0p-53;
    return -std::log(u1 * u2) / double(n);
}

}  // namespace

McEstimate mc_kernel_oracle(double y_hat, double tau_hat, double cos_pr,
                            long samples, std::uint64_t seed, int n_workers) {
    if (!(y_hat >= 0.0)) throw config_error("mc_kernel_oracle: y_hat must be non-negative");
    if (std::fabs(cos_pr) > 1.0) throw config_error("mc_kernel_oracle: cos_pr out of range");
    if (samples < mc_block) throw config_error("mc_kernel_oracle: need at least 65536 samples");
    if (n_workers < 1) n_workers = 1;

    const long n_blocks = samples / mc_block;  // trailing partial block dropped
    const long used = n_blocks * mc_block;
    const double sin_pr = std::sqrt(std::fmax(0.0, 1.0 - cos_pr * cos_pr));

    std::vector<BlockSum> blocks(static_cast<std::size_t>(n_blocks));
    auto run_block = [&](long b) {
        double s = 0.0, c = 0.0, s2 = 0.0, c2 = 0.0;  // Kahan pairs
        for (long i = 0; i < mc_block; ++i) {
            SampleRng rng(seed, std::uint64_t(b) * mc_block + std::uint64_t(i));
            const double kappa = draw_kappa(rng);
            const double z = 2.0 * rng.u01() - 1.0;
            const double phi = 2.0 * pi * rng.u01();
            const double pk = sin_pr * std::sqrt(std::fmax(0.0, 1.0 - z * z)) * std::cos(phi) +
                              cos_pr * z;
            const double f = std::cos(kappa * tau_hat) * (1.0 - pk * pk) *
                             std::cos(kappa * y_hat * z);
            double y = f - c;
            double t = s + y;
            c = (t - s) - y;
            s = t;
            y = f * f - c2;
            t = s2 + y;
            c2 = (t - s2) - y;
            s2 = t;
        }
        blocks[std::size_t(b)] = {s, s2};
    };

    if (n_workers == 1) {
        for (long b = 0; b < n_blocks; ++b) run_block(b);
    } else {
        std::vector<std::thread> pool;
        std::atomic<long> next{0};
        for (int w = 0; w < n_workers; ++w) {
            pool.emplace_back([&] {
                for (;;) {
                    const long b = next.fetch_add(1);
                    if (b >= n_blocks) return;
                    run_block(b);
                }
            });
        }
        for (auto& t : pool) t.join();
    }

    // reduce in block order so the result does not depend on scheduling
    double sum = 0.0, comp = 0.0, sumsq = 0.0, compsq = 0.0;
    for (const auto& blk : blocks) {
        double y = blk.sum - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        y = blk.sumsq - compsq;
        t = sumsq + y;
        compsq = (t - sumsq) - y;
        sumsq = t;
    }
    const double mean = sum / double(used);
    const double var = std::fmax(0.0, (sumsq / double(used) - mean * mean)) /
                       double(used - 1) * double(used);
    McEstimate est;
    est.value = (pi / 3.0) * mean;
    est.std_error = (pi / 3.0) * std::sqrt(var / double(used));
    est.samples = used;
    return est;
}

namespace {

// self-contained kernel for the trapezoid oracle: fixed-grid Simpson over
// [0, 45] with its own Bessel weights and Planck factor
double oracle_kernel(double y, double tau, double cos2) {
    constexpr int m = 32768;  // even
    constexpr double k_hi = 45.0;
    const double h = k_hi / m;
    double acc = 0.0;
    for (int i = 1; i <= m; ++i) {
        const double k = h * double(i);
        const double w = (i == m) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        const double planck = k / std::expm1(k);
        const double x = k * y;
        double td, tr;
        if (x < 1e-2) {
            const double x2 = x * x;
            td = 2.0 / 3.0 - 2.0 * x2 / 15.0 + x2 * x2 / 140.0;
            tr = x2 / 15.0 - x2 * x2 / 210.0;
        } else {
            const double s = std::sin(x), c = std::cos(x);
            const double j0 = s / x;
            const double j1x = (s - x * c) / (x * x * x);
            td = j0 - j1x;
            tr = -j0 + 3.0 * j1x;
        }
        acc += w * planck * std::cos(k * tau) * (td + cos2 * tr);
    }
    // i = 0 contributes planck(0) * (2/3 + 0) * cos(0) = 2/3
    acc += 2.0 / 3.0;
    return (2.0 / pi) * acc * h / 3.0;
}

double trapezoid_once(const decoherence::DecoherencePoint& pt, int n) {
    const double tau = pt.tau_hat, y = pt.y_hat, v = pt.v, cpy = pt.cos_py;
    const double h = tau / n;
    // F depends on the two times only through their difference
    std::vector<double> fdiff(std::size_t(n) + 1);
    for (int iu = 0; iu <= n; ++iu) {
        const double u = h * double(iu);
        const double duv = u * v;
        const double rp = std::sqrt(duv * duv + y * y + 2.0 * duv * y * cpy);
        const double rm = std::sqrt(duv * duv + y * y - 2.0 * duv * y * cpy);
        const double cp2 = rp > 0.0 ? std::pow((duv + y * cpy) / rp, 2) : 1.0;
        const double cm2 = rm > 0.0 ? std::pow((duv - y * cpy) / rm, 2) : 1.0;
        fdiff[std::size_t(iu)] = oracle_kernel(duv, u, 1.0) -
                                 0.5 * oracle_kernel(rp, u, cp2) -
                                 0.5 * oracle_kernel(rm, u, cm2);
    }
    double acc = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double wi = (i == 0 || i == n) ? 0.5 : 1.0;
        for (int j = 0; j <= n; ++j) {
            const double wj = (j == 0 || j == n) ? 0.5 : 1.0;
            acc += wi * wj * fdiff[std::size_t(std::abs(i - j))];
        }
    }
    return pt.alpha_eff * v * v * acc * h * h;
}

}  // namespace

TrapezoidEstimate trapezoid_s_oracle(const decoherence::DecoherencePoint& pt, int n) {
    if (n < 8) throw config_error("trapezoid_s_oracle: n must be at least 8");
    if (!(pt.tau_hat > 0.0)) return {0.0, 0.0, n};
    const double coarse = trapezoid_once(pt, n);
    const double fine = trapezoid_once(pt, 2 * n);
    TrapezoidEstimate est;
    est.value = (4.0 * fine - coarse) / 3.0;
    est.error_bar = std::fabs(fine - coarse) / 3.0 + 1e-7 * std::fabs(fine) + 1e-16;
    est.n_coarse = n;
    return est;
}

double zeta_sum(int s) {
    if (s < 2) throw config_error("zeta_sum: s must be at least 2");
    constexpr int n_terms = 4096;
    double sum = 0.0, comp = 0.0;
    for (int n = n_terms; n >= 1; --n) {
        const double t = std::pow(double(n), double(-s));
        const double y = t - comp;
        const double tt = sum + y;
        comp = (tt - sum) - y;
        sum = tt;
    }
    const double nn = double(n_terms);
    double tail = std::pow(nn, 1.0 - s) / (double(s) - 1.0);
    tail -= 0.5 * std::pow(nn, double(-s));
    tail += double(s) / 12.0 * std::pow(nn, double(-s - 1));
    tail -= double(s) * double(s + 1) * double(s + 2) / 720.0 * std::pow(nn, double(-s - 3));
    return sum + tail;
}

namespace {

// own log-sinh: this file must not lean on the engine implementations
double lsinh(double x) {
    const double y = pi * x;
    if (y < 0.1) {
        const double y2 = y * y;
        return std::log1p(y2 * (1.0 / 6.0 + y2 * (1.0 / 120.0 + y2 / 5040.0)));
    }
    if (y < 350.0) return std::log(std::sinh(y) / y);
    return y - std::log(2.0 * y) + std::log1p(-std::exp(-2.0 * y));
}

double simpson_rec(double (*f)(double, const double*), const double* args,
                   double a, double b, double fa, double fm, double fb,
                   double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm, args), frm = f(rm, args);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0) throw budget_error("s_reduced_closed_oracle: recursion limit");
    if (std::fabs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return simpson_rec(f, args, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_rec(f, args, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double mu_integrand(double mu, const double* args) {
    const double tau = args[0], y = args[1];
    return (1.0 - mu * mu) * (lsinh(tau) + lsinh(y * mu) -
                              0.5 * lsinh(tau + y * mu) -
                              0.5 * lsinh(std::fabs(tau - y * mu)));
}

}  // namespace

double s_reduced_closed_oracle(const decoherence::DecoherencePoint& pt) {
    if (!(pt.tau_hat >= 0.0) || !(pt.y_hat >= 0.0))
        throw config_error("s_reduced_closed_oracle: negative arguments");
    if (pt.tau_hat == 0.0 || pt.y_hat == 0.0) return 0.0;
    const double args[2] = {pt.tau_hat, pt.y_hat};
    const double a = 0.0, b = 1.0;
    const double fa = mu_integrand(a, args), fb = mu_integrand(b, args);
    const double fm = mu_integrand(0.5, args);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const double integral =
        simpson_rec(mu_integrand, args, a, b, fa, fm, fb, whole, 1e-12 * std::fmax(1.0, std::fabs(whole)), 60);
    return pt.alpha_eff * pt.v * pt.v * (2.0 / pi) * integral;
}

}  // namespace thermdec::oracles
