#include "thermdec/validate.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "thermdec/bose.hpp"
#include "thermdec/constants.hpp"
#include "thermdec/decoherence.hpp"
#include "thermdec/greens.hpp"
#include "thermdec/interference.hpp"
#include "thermdec/oracles.hpp"
#include "thermdec/report.hpp"
#include "thermdec/units.hpp"
#include "thermdec/wigner.hpp"

namespace thermdec::validate {

namespace {

constexpr double pi = constants::pi;

ValidationEntry make_entry(const std::string& name, double engine, double reference,
                           double tolerance, const std::string& note = "",
                           bool informational = false) {
    ValidationEntry e;
    e.name = name;
    e.engine_value = engine;
    e.reference_value = reference;
    e.difference = engine - reference;
    e.tolerance = tolerance;
    e.pass = std::fabs(e.difference) <= tolerance;
    e.informational = informational;
    e.note = note;
    return e;
}

double rel_diff(double a, double b) { return (a - b) / b; }

}  // namespace

ValidationReport run_validation(const ValidateOptions& opt) {
    ValidationReport rep;
    auto add = [&rep](const ValidationEntry& e) { rep.entries.push_back(e); };
    const double alpha = constants::fine_structure;

    // --- series route against the coth closed form --------------------------
    for (double a : {0.1, 1.0, 10.0}) {
        const auto got = bose::bose_series({0, bose::Trig::sin, a}, 1e-13);
        add(make_entry("coth_identity_a" + report::fmt17(a), got.value,
                       bose::coth_sin_identity(a), 1e-10));
    }

    // --- series route against direct zeta sums ------------------------------
    add(make_entry("zeta2_weight_integral",
                   bose::bose_series({1, bose::Trig::constant, 0.0}, 1e-13).value,
                   oracles::zeta_sum(2), 1e-10, "int k/(e^k-1) = zeta(2) = pi^2/6"));
    add(make_entry("zeta4_weight_integral",
                   bose::bose_series({3, bose::Trig::constant, 0.0}, 1e-13).value,
                   6.0 * oracles::zeta_sum(4), 1e-10, "int k^3/(e^k-1) = 6 zeta(4) = pi^4/15"));

    // --- series vs adaptive on mixed cases -----------------------------------
    {
        const bose::BoseIntegralSpec specs[4] = {
            {0, bose::Trig::sin, 1.0}, {-1, bose::Trig::one_minus_cos, 2.0},
            {0, bose::Trig::one_minus_cos, 0.3}, {1, bose::Trig::cos, 5.0}};
        const char* names[4] = {"series_vs_adaptive_sin", "series_vs_adaptive_omc_log",
                                "series_vs_adaptive_omc_flat", "series_vs_adaptive_cos"};
        for (int i = 0; i < 4; ++i) {
            const auto s = bose::bose_series(specs[i], 1e-13);
            const auto q = bose::bose_adaptive(specs[i], 1e-11);
            add(make_entry(names[i], s.value, q.value, 1e-10));
        }
    }

    // --- Monte Carlo kernel oracle -------------------------------------------
    const long mc_samples = opt.quick ? 262144 : 2097152;
    {
        const auto mc = oracles::mc_kernel_oracle(0.0, 0.0, 1.0, mc_samples, opt.seed,
                                                  opt.n_workers);
        add(make_entry("mc_kernel_coincidence", mc.value, 2.0 * pi / 9.0,
                       3.0 * mc.std_error,
                       "zero-lag kernel vs 2 pi/9; bound is 3 standard errors"));
    }
    {
        const auto mc = oracles::mc_kernel_oracle(0.5, 1.0, 0.7, mc_samples, opt.seed + 1,
                                                  opt.n_workers);
        const double eng = greens::contracted_kernel({0.5, 1.0, 0.7}, 1e-10);
        add(make_entry("mc_kernel_general", eng, mc.value, 3.0 * mc.std_error,
                       "engine kernel vs Monte Carlo at (y, tau, c) = (0.5, 1, 0.7)"));
    }

    // --- exact exponent vs raw 2-D trapezoid ---------------------------------
    {
        const decoherence::DecoherencePoint pt{2.0, 5.0, 0.01, alpha, 1.0};
        const auto eng = decoherence::s_exact(pt, 1e-9);
        const auto trap = oracles::trapezoid_s_oracle(pt, opt.quick ? 48 : 96);
        add(make_entry("trapezoid_vs_exact", eng.s, trap.value,
                       eng.abs_error + trap.error_bar,
                       "bound is the combined error bars"));
    }

    // --- reduced exponent vs the semi-closed route ---------------------------
    {
        const decoherence::DecoherencePoint pt{1.0, 1.0, 0.01, alpha, 1.0};
        const auto eng = decoherence::s_reduced(pt, 1e-12);
        const double oracle = oracles::s_reduced_closed_oracle(pt);
        add(make_entry("reduced_vs_closed_oracle", eng.s, oracle,
                       1e-6 * std::fabs(oracle),
                       "radial quadrature vs angular-first closed route"));
    }

    // --- asymptotic laws ------------------------------------------------------
    {
        const decoherence::DecoherencePoint pt{10.0, 1000.0, 0.01, alpha, 1.0};
        const auto eng = decoherence::s_reduced(pt, 1e-12);
        const double law = decoherence::s_large_y(10.0, 0.01, alpha);
        add(make_entry("large_y_law_tau10", eng.s, law, 0.01 * law,
                       "far-separated log-sinh law at tau = 10, y = 1000"));
    }
    {
        const decoherence::DecoherencePoint pt{50.0, 1000.0, 0.01, alpha, 1.0};
        const auto eng = decoherence::s_reduced(pt, 1e-12);
        const double law = decoherence::s_large_y(50.0, 0.01, alpha);
        add(make_entry("large_y_proxy_tau50", eng.s, law, 0.01 * law,
                       "relative gap " + report::fmt17(rel_diff(eng.s, law)) +
                           "; the linear-in-tau correction is -(3/4) tau/y, about -3.9% "
                           "here, so the 1% band cannot close at tau/y = 0.05",
                       true));
    }
    {
        const decoherence::DecoherencePoint pt{0.05, 0.05, 0.01, alpha, 1.0};
        const auto eng = decoherence::s_reduced(pt, 1e-15);
        const double law = decoherence::s_small_t_small_y(pt);
        add(make_entry("small_t_small_y_law", eng.s, law, 0.05 * law,
                       "joint quadratic law at tau = y = 0.05"));
    }
    {
        const auto s1 = decoherence::s_reduced({1000.0, 10.0, 0.01, alpha, 1.0}, 1e-12);
        const double law = decoherence::s_stationary(10.0, 0.01, alpha);
        add(make_entry("stationary_limit", s1.s, law, 0.01 * law,
                       "late-time plateau vs the stationary integral at y = 10"));
        const auto s2 = decoherence::s_reduced({2000.0, 10.0, 0.01, alpha, 1.0}, 1e-12);
        add(make_entry("stationary_drift", s2.s, s1.s, 1e-3 * s1.s,
                       "tau = 1000 vs tau = 2000 at y = 10"));
    }

    // --- coefficient adjudications -------------------------------------------
    {
        // small-time curvature at large separation: 2 pi/9 vs pi/9
        const double tau = 0.01, y = 1000.0, v = 0.01;
        const auto eng = decoherence::s_reduced({tau, y, v, alpha, 1.0}, 1e-15);
        const double meas = eng.s / (alpha * v * v * tau * tau);
        const double err = eng.abs_error / (alpha * v * v * tau * tau);
        add(make_entry("adjudicate_small_time_curvature", meas, 2.0 * pi / 9.0,
                       0.01 * (2.0 * pi / 9.0),
                       "measured " + report::fmt17(meas) + " +- " + report::fmt17(err) +
                           "; 2 pi/9 = " + report::fmt17(2.0 * pi / 9.0) +
                           ", rejected variant pi/9 = " + report::fmt17(pi / 9.0)));
    }
    {
        // small-separation stationary coefficient: 2 pi/45 vs pi/45
        const double tau = 1000.0, y = 0.01, v = 0.01;
        const auto eng = decoherence::s_reduced({tau, y, v, alpha, 1.0}, 1e-15);
        const double meas = eng.s / (alpha * v * v * y * y);
        const double err = eng.abs_error / (alpha * v * v * y * y);
        add(make_entry("adjudicate_small_sep_stationary", meas, 2.0 * pi / 45.0,
                       0.01 * (2.0 * pi / 45.0),
                       "measured " + report::fmt17(meas) + " +- " + report::fmt17(err) +
                           "; 2 pi/45 = " + report::fmt17(2.0 * pi / 45.0) +
                           ", rejected variant pi/45 = " + report::fmt17(pi / 45.0)));
    }
    {
        // two-packet constant: 2/(3 pi) vs 1/(3 pi)
        interference::TwoPacketConfig cfg;
        cfg.v1 = {0.0, 0.0, 0.005};
        cfg.v2 = {0.0, 0.0, -0.005};
        cfg.tau_hat = 10.0;
        cfg.alpha_eff = alpha;
        const auto fp = interference::s12_first_principles(cfg, 1e-9);
        const double dv = 0.01;
        const double meas = fp.s12 / (alpha * dv * dv * decoherence::log_sinh_growth(10.0));
        add(make_entry("adjudicate_two_packet_constant", meas, 2.0 / (3.0 * pi),
                       0.05 * (2.0 / (3.0 * pi)),
                       "measured " + report::fmt17(meas) + "; 2/(3 pi) = " +
                           report::fmt17(2.0 / (3.0 * pi)) + ", rejected variant 1/(3 pi) = " +
                           report::fmt17(1.0 / (3.0 * pi))));
    }

    // --- two-packet band -------------------------------------------------------
    {
        double worst = 0.0;
        for (double tau : {1.0, 10.0, 50.0}) {
            if (opt.quick && tau == 50.0) continue;
            interference::TwoPacketConfig cfg;
            cfg.v1 = {0.0, 0.0, 0.005};
            cfg.v2 = {0.0, 0.0, -0.005};
            cfg.tau_hat = tau;
            cfg.alpha_eff = alpha;
            const auto fp = interference::s12_first_principles(cfg, 1e-9);
            const double closed = interference::s12_closed(tau, 0.01, alpha);
            worst = std::fmax(worst, std::fabs(rel_diff(fp.s12, closed)));
        }
        add(make_entry("two_packet_band", worst, 0.0, 0.10,
                       "worst relative gap between the evaluators over tau in {1, 10, 50}"));
    }

    // --- screen pattern: injected exponent recovered from the fringes ---------
    {
        interference::TwoPacketConfig cfg;
        cfg.v1 = {0.0, 0.0, 0.011};
        cfg.v2 = {0.0, 0.0, 0.009};
        cfg.tau_hat = 20.0;
        cfg.alpha_eff = alpha;
        // overlap exp(-d^2/(8 sigma^2)) = 0.9 at packet drift d = 0.04
        cfg.packet_width = 0.043573;
        // short fringe period so the envelopes are flat across one fringe
        cfg.phase_scale = 1.0e6;
        cfg.s12_override = 0.6931471805599453;  // e^{-S12} = 1/2
        const double mid = 0.5 * cfg.tau_hat * (0.011 + 0.009);
        const double period = 2.0 * pi / (cfg.phase_scale * 0.002);
        std::vector<double> grid(2001);
        for (int i = 0; i < 2001; ++i)
            grid[std::size_t(i)] = mid + period * (double(i) / 2000.0 - 0.5);
        const auto pat = interference::screen_pattern(cfg, grid);
        add(make_entry("fringe_injection", pat.fringe_visibility.value_or(-1.0), 0.5, 0.005,
                       "override S12 = ln 2; overlap = " + report::fmt17(pat.overlap)));
    }

    // --- Wigner checks ----------------------------------------------------------
    {
        const double aa = 1.3, pp = 0.7;
        const auto slice = wigner::gaussian_slice(aa, pp, 14.0, 1401);
        std::vector<double> kg(201);
        for (int i = 0; i < 201; ++i) kg[std::size_t(i)] = -3.0 + 6.0 * double(i) / 200.0;
        const auto w0 = wigner::wigner_transform(slice, kg);
        double worst = 0.0;
        for (std::size_t i = 0; i < kg.size(); ++i) {
            const double exact = std::exp(-(kg[i] - pp) * (kg[i] - pp) / (2.0 * aa)) /
                                 std::sqrt(2.0 * pi * aa);
            worst = std::fmax(worst, std::fabs(w0.values[i] - exact));
        }
        add(make_entry("wigner_gaussian", worst, 0.0, 1e-8,
                       "largest pointwise gap to the closed-form transform"));

        const auto one = wigner::momentum_damping_evolve(w0, 0.3, 0.4);
        const auto two = wigner::momentum_damping_evolve(one, 0.3, 0.6);
        const auto direct = wigner::momentum_damping_evolve(w0, 0.3, 1.0);
        double gap = 0.0;
        for (std::size_t i = 0; i < kg.size(); ++i)
            gap = std::fmax(gap, std::fabs(two.values[i] - direct.values[i]));
        add(make_entry("wigner_semigroup", gap, 0.0, 1e-12,
                       "evolve(0.4) then evolve(0.6) vs evolve(1.0)"));
    }
    {
        // translation-invariant density is annihilated by the generator
        wigner::DensitySheet sheet;
        const int nq = 64, nu = 33;
        sheet.q_grid.resize(nq);
        sheet.u_grid.resize(nu);
        for (int i = 0; i < nq; ++i) sheet.q_grid[std::size_t(i)] = -4.0 + 8.0 * i / (nq - 1.0);
        for (int i = 0; i < nu; ++i) sheet.u_grid[std::size_t(i)] = -2.0 + 4.0 * i / (nu - 1.0);
        sheet.values.resize(std::size_t(nq) * nu);
        for (int iq = 0; iq < nq; ++iq)
            for (int iu = 0; iu < nu; ++iu) {
                const double u = sheet.u_grid[std::size_t(iu)];
                sheet.values[std::size_t(iq) * nu + std::size_t(iu)] =
                    std::complex<double>(std::exp(-0.5 * u * u), -0.3 * u);
            }
        const auto out = wigner::double_commutator_apply(sheet, 0.7);
        double worst = 0.0;
        for (const auto& v : out.values) worst = std::fmax(worst, std::abs(v));
        // the boundary stencil leaves a few ulps of 5*rho per h^2
        add(make_entry("commutator_translation_invariance", worst, 0.0, 1e-12,
                       "generator output on a q-independent density"));
    }

    // --- collective scaling -------------------------------------------------
    {
        // v = 2^-6 keeps every square and scale exact in floating point
        const double v = 0.015625;
        std::vector<decoherence::ChargedParticle> one{{1, {0.0, 0.0, v}}};
        std::vector<decoherence::ChargedParticle> three(3, {1, {0.0, 0.0, v}});
        const double s1 = decoherence::n_particle_exponent(one, 5.0, alpha);
        const double s3 = decoherence::n_particle_exponent(three, 5.0, alpha);
        add(make_entry("n_particle_square_law", s3, 9.0 * s1, 0.0,
                       "three aligned equal charges vs 9x one"));
        std::vector<decoherence::ChargedParticle> pair{{1, {0.0, 0.0, v}},
                                                       {-1, {0.0, 0.0, v}}};
        add(make_entry("neutral_pair", decoherence::n_particle_exponent(pair, 5.0, alpha),
                       0.0, 0.0, "opposite charges co-moving"));
    }

    // --- units bridge ---------------------------------------------------------
    {
        add(make_entry("thermal_wavelength_300k", units::thermal_wavelength_m(300.0),
                       7.63294839987e-6, 0.001 * 7.63294839987e-6,
                       "hbar c / (k_B T) at 300 K"));
        units::PhysicalConfig pc;
        pc.temperature_k = 300.0;
        pc.momentum = {0.0, 0.0, 0.01};
        pc.separation_m = {5e-6, 0.0, 0.0};
        pc.time_s = 1e-13;
        double prev = std::numeric_limits<double>::max();
        bool monotone = true;
        double last = 0.0;
        for (double temp : {300.0, 150.0, 75.0, 37.5, 18.75, 9.375}) {
            pc.temperature_k = temp;
            const auto pt = units::to_dimensionless(pc);
            const auto s = decoherence::s_reduced(
                {pt.tau_hat, pt.y_hat, pt.v, pt.alpha_eff, 1.0}, 1e-14);
            if (!(s.s < prev)) monotone = false;
            prev = s.s;
            last = s.s;
        }
        add(make_entry("cooling_monotone", monotone ? 1.0 : 0.0, 1.0, 0.0,
                       "exponent decreases at every halving of T; final S = " +
                           report::fmt17(last)));
    }

    rep.all_pass = true;
    for (const auto& e : rep.entries)
        if (!e.informational && !e.pass) rep.all_pass = false;
    return rep;
}

std::string render_report_text(const ValidationReport& report) {
    std::string out;
    for (const auto& e : report.entries) {
        out += e.pass ? "PASS " : (e.informational ? "INFO " : "FAIL ");
        out += e.name;
        out += ": engine=" + report::fmt17(e.engine_value);
        out += " reference=" + report::fmt17(e.reference_value);
        out += " diff=" + report::fmt17(e.difference);
        out += " tol=" + report::fmt17(e.tolerance);
        if (!e.note.empty()) out += "  # " + e.note;
        out += "\n";
    }
    out += report.all_pass ? "ALL PASS\n" : "FAILURES PRESENT\n";
    return out;
}

}  // namespace thermdec::validate
