#pragma once

#include <functional>

namespace thermdec::bose {

// Integrals of the form
//
//     I = int_0^inf k^m trig(a k) / (e^k - 1) dk
//
// with m in [-1, 3] and trig one of sin, cos, 1-cos, or the constant 1.
// Integrability at k = 0 requires m + z >= 1 where z is the order of the
// first nonvanishing term of trig at zero (sin: 1, 1-cos: 2, cos/const: 0).
// The detailed-balance weight guarantees convergence at infinity for every
// admissible m.

enum class Trig { sin, cos, one_minus_cos, constant };

struct BoseIntegralSpec {
    int power_m = 1;
    Trig trig = Trig::sin;
    double a = 0.0;  // frequency, >= 0
};

struct QuadratureResult {
    double value = 0.0;
    double abs_error = 0.0;   // rigorous bound, not an estimate
    long evaluations = 0;     // series terms or integrand evaluations
    const char* method = "";
};

// Iteration caps.  Exceeding any of them raises budget_error.
inline constexpr long series_term_cap = 1000000;
inline constexpr long panel_cap = 100000;
inline constexpr double frequency_cap = 5000.0;

// Below this k the Planck factor k/(e^k - 1) is evaluated by its Taylor
// polynomial; above, by expm1.  Both branches agree to ~1e-22 at the switch.
inline constexpr double planck_taylor_k0 = 1e-3;

double planck_factor(double k);  // k / (e^k - 1), continuous at k = 0

// Geometric-series route: expand 1/(e^k-1) = sum_n e^{-n k}, integrate each
// term in closed form, and complete the slowly converging tail with
// Euler-Maclaurin corrections.  Exact error bound; fast at any frequency.
QuadratureResult bose_series(const BoseIntegralSpec& spec, double tol = 1e-12);

// Adaptive Gauss-Kronrod route over a truncated range with a certified
// truncation bound.  Independent of the series route; used to cross-check it.
QuadratureResult bose_adaptive(const BoseIntegralSpec& spec, double tol = 1e-10);

// Closed form for int_0^inf sin(a k)/(e^k - 1) dk = (pi/2) coth(pi a) - 1/(2 a),
// continued through a = 0 by its odd Taylor series.
double coth_sin_identity(double a);

// Plain adaptive Gauss-Kronrod integration on a finite interval.  Used for
// the outer time integrals of the exponents; shares the panel machinery of
// the detailed-balance engine.
QuadratureResult adaptive_gk(const std::function<double(double)>& f,
                             double lo, double hi, double tol,
                             long cap = panel_cap);

// General engine behind bose_adaptive: int_0^inf k^m phi(k)/(e^k - 1) dk for
// a caller-supplied smooth phi with |phi| <= phi_bound and oscillation
// frequency <= freq_scale.  The truncation point is chosen from phi_bound and
// the incomplete-gamma tail of the weight; panels start at pi/freq_scale.
QuadratureResult planck_adaptive(int power_m,
                                 const std::function<double(double)>& phi,
                                 double phi_bound,
                                 double freq_scale,
                                 double tol);

}  // namespace thermdec::bose
