#include "thermdec/cli.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <limits>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "thermdec/constants.hpp"
#include "thermdec/decoherence.hpp"
#include "thermdec/errors.hpp"
#include "thermdec/interference.hpp"
#include "thermdec/report.hpp"
#include "thermdec/runconfig.hpp"
#include "thermdec/units.hpp"
#include "thermdec/validate.hpp"
#include "thermdec/wigner.hpp"

namespace thermdec::cli {

namespace {

using nlohmann::ordered_json;

int env_thread_count() {
    const char* raw = std::getenv("THERMAL_DECOHERENCE_THREADS");
    if (!raw || !*raw) {
        const unsigned hw = std::thread::hardware_concurrency();
        return int(hw == 0 ? 1 : (hw > 8 ? 8 : hw));
    }
    char* end = nullptr;
    const long v = std::strtol(raw, &end, 10);
    if (!end || *end != '\0' || v < 1 || v > 64)
        throw config_error("THERMAL_DECOHERENCE_THREADS must be an integer in [1, 64]");
    return int(v);
}

// index-ordered parallel map; output identical for any worker count
template <typename Fn>
void parallel_rows(std::size_t n, int workers, Fn fn) {
    if (workers <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr first_error;
    std::mutex err_mutex;
    const int use = int(std::min<std::size_t>(std::size_t(workers), n));
    for (int w = 0; w < use; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_mutex);
                    if (!first_error) first_error = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

ordered_json config_to_json(const runconfig::Config& cfg) {
    ordered_json out = ordered_json::object();
    for (const auto& [sec, keys] : cfg.sections) {
        ordered_json s = ordered_json::object();
        for (const auto& [key, v] : keys) {
            switch (v.kind) {
                case runconfig::Value::Kind::number: s[key] = v.num; break;
                case runconfig::Value::Kind::boolean: s[key] = v.flag; break;
                case runconfig::Value::Kind::string: s[key] = v.text; break;
                case runconfig::Value::Kind::array: s[key] = v.items; break;
            }
        }
        out[sec] = s;
    }
    return out;
}

std::string hash_string() {
    char buf[32];
    std::snprintf(buf, sizeof buf, "0x%016llx",
                  static_cast<unsigned long long>(constants::constants_table_hash()));
    return buf;
}

ordered_json sidecar_base(const char* command, const runconfig::Config& cfg,
                          std::uint64_t seed, double tol) {
    ordered_json j;
    j["command"] = command;
    j["constants_table_hash"] = hash_string();
    j["seed"] = seed;
    j["tol"] = tol;
    j["config"] = config_to_json(cfg);
    return j;
}

void write_json(const std::string& path, const ordered_json& j) {
    report::write_text_file(path, j.dump(2) + "\n");
}

struct CommonArgs {
    std::string config_path;
    std::string out_dir = "out";
    std::uint64_t seed = 12345;
    double tol = 1e-8;
    std::string method = "all";
    bool quick = false;
};

runconfig::Config load_config(const CommonArgs& args) {
    if (args.config_path.empty()) return {};
    return runconfig::parse_config_file(args.config_path);
}

// ----------------------------------------------------------------------------
// sweep
// ----------------------------------------------------------------------------

struct SweepRow {
    double tau_hat, y_hat, v, alpha;
    double s_exact, s_reduced, s_regime, abs_err;
    decoherence::Regime regime;
};

int cmd_sweep(const CommonArgs& args) {
    const auto cfg = load_config(args);
    if (args.method != "exact" && args.method != "reduced" && args.method != "all")
        throw config_error("--method must be exact, reduced or all");
    const int workers = env_thread_count();

    const double v = cfg.number("particle", "v", 0.01);
    const double zq = cfg.number("particle", "charge", 1.0);
    if (zq != std::floor(zq) || zq == 0.0)
        throw config_error("particle.charge must be a nonzero integer");
    const double alpha = zq * zq * constants::fine_structure;
    const double cos_py = cfg.number("particle", "cos_py", 1.0);

    auto tau_axis = runconfig::expand_axis(cfg, "sweep", "tau_hat");
    auto y_axis = runconfig::expand_axis(cfg, "sweep", "y_hat");
    const auto time_axis = runconfig::expand_axis(cfg, "sweep", "time_s");
    const auto sep_axis = runconfig::expand_axis(cfg, "sweep", "separation_m");
    const auto temp_axis = runconfig::expand_axis(cfg, "sweep", "temperature_k");
    const bool physical = !time_axis.empty() || !sep_axis.empty() || !temp_axis.empty();
    if (physical && (!tau_axis.empty() || !y_axis.empty()))
        throw config_error("sweep: reduced axes (tau_hat, y_hat) cannot be mixed with "
                           "physical axes (time_s, separation_m, temperature_k)");

    struct Point {
        double tau, y, v, alpha, cos_py;
    };
    std::vector<Point> pts;
    if (physical) {
        const auto times = time_axis.empty() ? std::vector<double>{1e-13} : time_axis;
        const auto seps = sep_axis.empty() ? std::vector<double>{5e-6} : sep_axis;
        const auto temps = temp_axis.empty() ? std::vector<double>{300.0} : temp_axis;
        const double mass = cfg.number("particle", "mass_me", 1.0);
        for (double temp : temps)
            for (double t : times)
                for (double sep : seps) {
                    units::PhysicalConfig pc;
                    pc.temperature_k = temp;
                    pc.mass_me = mass;
                    pc.charge_number = int(zq);
                    pc.time_s = t;
                    const double s = std::sqrt(std::fmax(0.0, 1.0 - cos_py * cos_py));
                    pc.momentum = {0.0, 0.0, v};
                    pc.separation_m = {sep * s, 0.0, sep * cos_py};
                    const auto pt = units::to_dimensionless(pc);
                    pts.push_back({pt.tau_hat, pt.y_hat, pt.v, pt.alpha_eff, pt.cos_py});
                }
    } else {
        if (tau_axis.empty()) tau_axis = {0.1, 1.0, 10.0};
        if (y_axis.empty()) y_axis = {0.1, 1.0, 10.0};
        for (double tau : tau_axis)
            for (double y : y_axis) pts.push_back({tau, y, v, alpha, cos_py});
    }
    if (pts.empty()) throw config_error("sweep: empty grid");
    if (pts.size() > 100000) throw config_error("sweep: grid exceeds 100000 points");

    std::vector<SweepRow> rows(pts.size());
    const bool want_exact = args.method != "reduced";
    const bool want_reduced = args.method != "exact";
    parallel_rows(pts.size(), workers, [&](std::size_t i) {
        const auto& p = pts[i];
        SweepRow row{};
        row.tau_hat = p.tau;
        row.y_hat = p.y;
        row.v = p.v;
        row.alpha = p.alpha;
        const decoherence::DecoherencePoint dp{p.tau, p.y, p.v, p.alpha, p.cos_py};
        double err = 0.0;
        if (want_exact) {
            const auto r = decoherence::s_exact(dp, args.tol);
            row.s_exact = r.s;
            err = std::fmax(err, r.abs_error);
        } else {
            row.s_exact = std::numeric_limits<double>::quiet_NaN();
        }
        if (want_reduced) {
            const auto r = decoherence::s_reduced(dp, args.tol);
            row.s_reduced = r.s;
            err = std::fmax(err, r.abs_error);
        } else {
            row.s_reduced = std::numeric_limits<double>::quiet_NaN();
        }
        row.regime = decoherence::regime_classify(p.tau, p.y);
        row.s_regime = decoherence::regime_closed_form(row.regime, dp);
        row.abs_err = err;
        rows[i] = row;
    });

    std::string csv = "tau_hat,y_hat,v,alpha,S_exact,S_reduced,S_regime,regime,abs_err\n";
    for (const auto& r : rows) {
        csv += report::fmt17(r.tau_hat) + "," + report::fmt17(r.y_hat) + "," +
               report::fmt17(r.v) + "," + report::fmt17(r.alpha) + "," +
               report::fmt17(r.s_exact) + "," + report::fmt17(r.s_reduced) + "," +
               report::fmt17(r.s_regime) + "," + decoherence::regime_name(r.regime) + "," +
               report::fmt17(r.abs_err) + "\n";
    }
    report::write_text_file(args.out_dir + "/sweep.csv", csv);

    ordered_json j = sidecar_base("sweep", cfg, args.seed, args.tol);
    j["method"] = args.method;
    j["rows"] = rows.size();
    j["files"] = {"sweep.csv"};
    write_json(args.out_dir + "/sweep.json", j);
    std::cout << "sweep: " << rows.size() << " rows -> " << args.out_dir << "/sweep.csv\n";
    return 0;
}

// ----------------------------------------------------------------------------
// visibility
// ----------------------------------------------------------------------------

int cmd_visibility(const CommonArgs& args) {
    const auto cfg = load_config(args);
    const int workers = env_thread_count();

    auto tau_axis = runconfig::expand_axis(cfg, "visibility", "tau_hat");
    auto dv_axis = runconfig::expand_axis(cfg, "visibility", "dv");
    if (tau_axis.empty()) tau_axis = {1.0, 10.0};
    if (dv_axis.empty()) dv_axis = {0.01};
    const double v_mean = cfg.number("visibility", "v_mean", 0.0);
    const double zq = cfg.number("particle", "charge", 1.0);
    const double alpha = zq * zq * constants::fine_structure;
    const bool first_principles = cfg.boolean("visibility", "first_principles", true);

    struct Row {
        double tau, dv, closed, fp, vis;
    };
    std::vector<Row> rows(tau_axis.size() * dv_axis.size());
    std::vector<std::pair<double, double>> combos;
    for (double tau : tau_axis)
        for (double dv : dv_axis) combos.emplace_back(tau, dv);

    parallel_rows(combos.size(), workers, [&](std::size_t i) {
        const auto [tau, dv] = combos[i];
        if (!(dv >= 0.0)) throw config_error("visibility: dv must be non-negative");
        Row row{};
        row.tau = tau;
        row.dv = dv;
        row.closed = interference::s12_closed(tau, dv, alpha);
        if (first_principles) {
            interference::TwoPacketConfig tp;
            tp.v1 = {0.0, 0.0, v_mean + 0.5 * dv};
            tp.v2 = {0.0, 0.0, v_mean - 0.5 * dv};
            tp.tau_hat = tau;
            tp.alpha_eff = alpha;
            row.fp = interference::s12_first_principles(tp, args.tol).s12;
        } else {
            row.fp = std::numeric_limits<double>::quiet_NaN();
        }
        row.vis = std::exp(-row.closed);
        rows[i] = row;
    });

    std::string csv = "tau_hat,dv,S12_closed,S12_first_principles,visibility\n";
    for (const auto& r : rows) {
        csv += report::fmt17(r.tau) + "," + report::fmt17(r.dv) + "," +
               report::fmt17(r.closed) + "," + report::fmt17(r.fp) + "," +
               report::fmt17(r.vis) + "\n";
    }
    report::write_text_file(args.out_dir + "/visibility.csv", csv);

    ordered_json j = sidecar_base("visibility", cfg, args.seed, args.tol);
    j["rows"] = rows.size();
    j["files"] = {"visibility.csv"};

    if (cfg.boolean("visibility", "screen", false)) {
        // screen pattern for the first grid combination
        const double tau = combos.front().first, dv = combos.front().second;
        interference::TwoPacketConfig tp;
        tp.v1 = {0.0, 0.0, v_mean + 0.5 * dv};
        tp.v2 = {0.0, 0.0, v_mean - 0.5 * dv};
        tp.tau_hat = tau;
        tp.alpha_eff = alpha;
        tp.packet_width = cfg.number("visibility", "packet_width", 1.0);
        double phase_scale = cfg.number("visibility", "phase_scale", 0.0);
        if (phase_scale == 0.0) {
            const double mass = cfg.number("particle", "mass_me", 1.0);
            const double temp = cfg.number("bath", "temperature_k", 300.0);
            phase_scale = mass * constants::electron_mass_ev /
                          (constants::k_boltzmann_ev_k * temp);
        }
        tp.phase_scale = phase_scale;
        const long n = std::lround(cfg.number("visibility", "screen_points", 2001.0));
        if (n < 2 || n > 1000000) throw config_error("visibility.screen_points out of range");
        const double mid = 0.5 * tau * (tp.v1[2] + tp.v2[2]);
        const double half = 4.0 * tp.packet_width + 0.5 * tau * dv;
        std::vector<double> grid(static_cast<std::size_t>(n));
        for (long i = 0; i < n; ++i)
            grid[std::size_t(i)] = mid - half + 2.0 * half * double(i) / double(n - 1);
        const auto pat = interference::screen_pattern(tp, grid);
        std::string screen_csv = "x,density,rho1,rho2,cross\n";
        for (std::size_t i = 0; i < pat.x.size(); ++i) {
            screen_csv += report::fmt17(pat.x[i]) + "," + report::fmt17(pat.density[i]) + "," +
                          report::fmt17(pat.rho1[i]) + "," + report::fmt17(pat.rho2[i]) + "," +
                          report::fmt17(pat.cross[i]) + "\n";
        }
        report::write_text_file(args.out_dir + "/screen.csv", screen_csv);
        j["files"].push_back("screen.csv");
        j["screen_s12"] = pat.s12;
        j["screen_overlap"] = pat.overlap;
        if (pat.fringe_visibility) j["screen_fringe_visibility"] = *pat.fringe_visibility;
    }
    write_json(args.out_dir + "/visibility.json", j);
    std::cout << "visibility: " << rows.size() << " rows -> " << args.out_dir
              << "/visibility.csv\n";
    return 0;
}

// ----------------------------------------------------------------------------
// wigner
// ----------------------------------------------------------------------------

int cmd_wigner(const CommonArgs& args) {
    const auto cfg = load_config(args);
    const double a = cfg.number("wigner", "a", 1.0);
    const double p = cfg.number("wigner", "p", 0.5);
    const double u_max = cfg.number("wigner", "u_max", 14.0);
    const long n = std::lround(cfg.number("wigner", "n", 1401.0));
    const double b = cfg.number("wigner", "b", 0.1);
    const double t = cfg.number("wigner", "t", 1.0);
    const long k_points = std::lround(cfg.number("wigner", "k_points", 257.0));
    if (n < 9 || k_points < 3) throw config_error("wigner: grid too small");

    const auto slice = wigner::gaussian_slice(a, p, u_max, std::size_t(n));
    const double du = slice.u_grid[1] - slice.u_grid[0];
    double k_max = cfg.number("wigner", "k_max", 0.0);
    if (k_max == 0.0) k_max = std::fmin(p + 5.0 * std::sqrt(a), 0.95 * constants::pi / du);
    std::vector<double> k_grid(static_cast<std::size_t>(k_points));
    for (long i = 0; i < k_points; ++i)
        k_grid[std::size_t(i)] = -k_max + 2.0 * k_max * double(i) / double(k_points - 1);

    const auto w0 = wigner::wigner_transform(slice, k_grid);
    const auto wt = wigner::momentum_damping_evolve(w0, b, t);

    double residual = 0.0;
    for (std::size_t i = 0; i < k_grid.size(); ++i) {
        const double exact = std::exp(-(k_grid[i] - p) * (k_grid[i] - p) / (2.0 * a)) /
                             std::sqrt(2.0 * constants::pi * a);
        residual = std::fmax(residual, std::fabs(w0.values[i] - exact));
    }
    const auto half = wigner::momentum_damping_evolve(w0, b, 0.5 * t);
    const auto twice = wigner::momentum_damping_evolve(half, b, 0.5 * t);
    double semigroup = 0.0;
    for (std::size_t i = 0; i < k_grid.size(); ++i)
        semigroup = std::fmax(semigroup, std::fabs(twice.values[i] - wt.values[i]));

    std::string csv = "k,W0,Wt\n";
    for (std::size_t i = 0; i < k_grid.size(); ++i) {
        csv += report::fmt17(k_grid[i]) + "," + report::fmt17(w0.values[i]) + "," +
               report::fmt17(wt.values[i]) + "\n";
    }
    report::write_text_file(args.out_dir + "/wigner.csv", csv);

    ordered_json j = sidecar_base("wigner", cfg, args.seed, args.tol);
    j["gaussian_residual"] = residual;
    j["semigroup_residual"] = semigroup;
    j["imag_residue"] = w0.imag_residue;
    j["files"] = {"wigner.csv"};
    write_json(args.out_dir + "/wigner.json", j);
    std::cout << "wigner: residual " << report::fmt17(residual) << " -> " << args.out_dir
              << "/wigner.csv\n";
    return 0;
}

// ----------------------------------------------------------------------------
// validate + constants
// ----------------------------------------------------------------------------

int cmd_validate(const CommonArgs& args) {
    validate::ValidateOptions opt;
    opt.seed = args.seed;
    opt.quick = args.quick;
    opt.n_workers = env_thread_count();
    const auto rep = validate::run_validation(opt);
    std::cout << validate::render_report_text(rep);

    ordered_json j;
    j["command"] = "validate";
    j["constants_table_hash"] = hash_string();
    j["seed"] = args.seed;
    j["quick"] = args.quick;
    ordered_json entries = ordered_json::array();
    for (const auto& e : rep.entries) {
        ordered_json je;
        je["name"] = e.name;
        je["engine_value"] = e.engine_value;
        je["reference_value"] = e.reference_value;
        je["difference"] = e.difference;
        je["tolerance"] = e.tolerance;
        je["pass"] = e.pass;
        je["informational"] = e.informational;
        je["note"] = e.note;
        entries.push_back(je);
    }
    j["entries"] = entries;
    j["all_pass"] = rep.all_pass;
    write_json(args.out_dir + "/validate.json", j);
    return rep.all_pass ? 0 : 1;
}

int cmd_constants(const CommonArgs&) {
    std::cout << constants::constants_table_text();
    std::cout << "table_hash = " << hash_string() << "\n";
    return 0;
}

}  // namespace

int run_cli(int argc, char** argv) {
    CLI::App app{"thermal photon decoherence toolkit"};
    app.require_subcommand(1);
    CommonArgs args;

    auto add_common = [&args](CLI::App* sub) {
        sub->add_option("--config", args.config_path, "config file (TOML subset)");
        sub->add_option("--out", args.out_dir, "output directory");
        sub->add_option("--seed", args.seed, "seed for stochastic oracles");
        sub->add_option("--tol", args.tol, "quadrature tolerance");
        sub->add_option("--method", args.method, "sweep evaluators: exact|reduced|all");
        sub->add_flag("--quick", args.quick, "smaller validation budgets");
    };

    CLI::App* sweep = app.add_subcommand("sweep", "exponent over a (tau, y) grid");
    CLI::App* vis = app.add_subcommand("visibility", "two-packet mutual exponent");
    CLI::App* wig = app.add_subcommand("wigner", "Wigner transform diagnostics");
    CLI::App* val = app.add_subcommand("validate", "oracle cross-checks");
    CLI::App* con = app.add_subcommand("constants", "print the pinned constants table");
    for (CLI::App* sub : {sweep, vis, wig, val, con}) add_common(sub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (sweep->parsed()) return cmd_sweep(args);
        if (vis->parsed()) return cmd_visibility(args);
        if (wig->parsed()) return cmd_wigner(args);
        if (val->parsed()) return cmd_validate(args);
        if (con->parsed()) return cmd_constants(args);
        throw config_error("no subcommand given");
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const budget_error& e) {
        std::cerr << "numeric budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace thermdec::cli
