#include "thermdec/wigner.hpp"

#include <cmath>
#include <string>

#include "thermdec/constants.hpp"
#include "thermdec/errors.hpp"

namespace thermdec::wigner {

namespace {

constexpr double pi = constants::pi;

// uniform spacing, to relative tolerance; returns the step
double check_uniform(const std::vector<double>& g, const char* what) {
    if (g.size() < grid_min)
        throw config_error(std::string(what) + ": need at least " + std::to_string(grid_min) +
                           " points");
    if (g.size() > grid_cap)
        throw config_error(std::string(what) + ": grid exceeds the cap of " +
                           std::to_string(grid_cap) + " points");
    const double h = (g.back() - g.front()) / double(g.size() - 1);
    if (!(h > 0.0)) throw config_error(std::string(what) + ": grid must be increasing");
    for (std::size_t i = 1; i < g.size(); ++i) {
        if (std::fabs(g[i] - g[i - 1] - h) > 1e-9 * h)
            throw config_error(std::string(what) + ": grid must be uniform");
    }
    return h;
}

void check_slice(const DensitySlice& s, double h) {
    if (s.values.size() != s.u_grid.size())
        throw config_error("density slice: values and grid sizes differ");
    const std::size_t n = s.u_grid.size();
    const double span = s.u_grid.back() + s.u_grid.front();  // 0 when symmetric
    if (std::fabs(span) > 1e-9 * h)
        throw config_error("density slice: u grid must be symmetric about zero");
    double max_abs = 0.0;
    for (const auto& v : s.values) max_abs = std::fmax(max_abs, std::abs(v));
    for (std::size_t i = 0; i < n; ++i) {
        const auto diff = s.values[i] - std::conj(s.values[n - 1 - i]);
        if (std::abs(diff) > 1e-9 * std::fmax(max_abs, 1e-300))
            throw config_error("density slice: rho(-u) must equal conj(rho(u))");
    }
}

}  // namespace

WignerGrid wigner_transform(const DensitySlice& slice,
                            const std::vector<double>& k_grid) {
    const double du = check_uniform(slice.u_grid, "wigner_transform u");
    check_slice(slice, du);
    if (k_grid.empty() || k_grid.size() > grid_cap)
        throw config_error("wigner_transform: k grid empty or above the cap");
    const double k_nyquist = pi / du;
    for (double k : k_grid) {
        if (!(std::fabs(k) <= k_nyquist))
            throw config_error("wigner_transform: |k| = " + std::to_string(std::fabs(k)) +
                               " exceeds the Nyquist limit pi/du = " + std::to_string(k_nyquist));
    }

    WignerGrid out;
    out.k_grid = k_grid;
    out.values.resize(k_grid.size());
    const std::size_t n = slice.u_grid.size();
    for (std::size_t j = 0; j < k_grid.size(); ++j) {
        const double k = k_grid[j];
        std::complex<double> acc(0.0, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
            const double ph = k * slice.u_grid[i];
            acc += w * slice.values[i] * std::complex<double>(std::cos(ph), std::sin(ph));
        }
        acc *= du / (2.0 * pi);
        out.values[j] = acc.real();
        out.imag_residue = std::fmax(out.imag_residue, std::fabs(acc.imag()));
    }
    return out;
}

WignerGrid momentum_damping_evolve(const WignerGrid& w0, double b, double t) {
    if (!(b >= 0.0)) throw config_error("momentum_damping_evolve: b must be non-negative");
    if (!(t >= 0.0)) throw config_error("momentum_damping_evolve: t must be non-negative");
    if (w0.k_grid.size() != w0.values.size())
        throw config_error("momentum_damping_evolve: grid and values sizes differ");
    WignerGrid out = w0;
    for (std::size_t i = 0; i < out.values.size(); ++i) {
        const double k = out.k_grid[i];
        out.values[i] *= std::exp(-b * k * k * t);
    }
    return out;
}

DensitySheet double_commutator_apply(const DensitySheet& sheet, double b) {
    if (!(b >= 0.0)) throw config_error("double_commutator_apply: b must be non-negative");
    const std::size_t nq = sheet.q_grid.size(), nu = sheet.u_grid.size();
    if (nq < 4) throw config_error("double_commutator_apply: need at least 4 centre points");
    if (nq > grid_cap || nu > grid_cap || nu == 0)
        throw config_error("double_commutator_apply: grid size out of range");
    if (sheet.values.size() != nq * nu)
        throw config_error("double_commutator_apply: values size must be nq * nu");
    double hq = (sheet.q_grid.back() - sheet.q_grid.front()) / double(nq - 1);
    if (!(hq > 0.0)) throw config_error("double_commutator_apply: q grid must be increasing");
    for (std::size_t i = 1; i < nq; ++i) {
        if (std::fabs(sheet.q_grid[i] - sheet.q_grid[i - 1] - hq) > 1e-9 * hq)
            throw config_error("double_commutator_apply: q grid must be uniform");
    }

    DensitySheet out;
    out.q_grid = sheet.q_grid;
    out.u_grid = sheet.u_grid;
    out.values.assign(nq * nu, {0.0, 0.0});
    const double inv_h2 = b / (hq * hq);
    auto at = [&](std::size_t iq, std::size_t iu) { return sheet.values[iq * nu + iu]; };
    for (std::size_t iu = 0; iu < nu; ++iu) {
        for (std::size_t iq = 0; iq < nq; ++iq) {
            std::complex<double> d2;
            if (iq == 0) {
                // one-sided second-order stencil at the boundary
                d2 = 2.0 * at(0, iu) - 5.0 * at(1, iu) + 4.0 * at(2, iu) - at(3, iu);
            } else if (iq == nq - 1) {
                d2 = 2.0 * at(nq - 1, iu) - 5.0 * at(nq - 2, iu) + 4.0 * at(nq - 3, iu) -
                     at(nq - 4, iu);
            } else {
                d2 = at(iq - 1, iu) - 2.0 * at(iq, iu) + at(iq + 1, iu);
            }
            out.values[iq * nu + iu] = inv_h2 * d2;
        }
    }
    return out;
}

DensitySlice gaussian_slice(double a, double p, double u_max, std::size_t n) {
    if (!(a > 0.0)) throw config_error("gaussian_slice: a must be positive");
    if (!(u_max > 0.0)) throw config_error("gaussian_slice: u_max must be positive");
    if (n < grid_min || n > grid_cap) throw config_error("gaussian_slice: n out of range");
    if (n % 2 == 0) throw config_error("gaussian_slice: n must be odd so u = 0 is sampled");
    DensitySlice s;
    s.u_grid.resize(n);
    s.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = -u_max + 2.0 * u_max * double(i) / double(n - 1);
        s.u_grid[i] = u;
        const double env = std::exp(-0.5 * a * u * u);
        s.values[i] = std::complex<double>(env * std::cos(p * u), -env * std::sin(p * u));
    }
    return s;
}

}  // namespace thermdec::wigner
