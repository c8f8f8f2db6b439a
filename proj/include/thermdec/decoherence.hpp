#pragma once

#include <array>
#include <vector>

namespace thermdec::decoherence {

// One evaluation point in reduced variables.  cos_py is the cosine between
// the packet momentum and the branch separation axis.
struct DecoherencePoint {
    double tau_hat = 0.0;
    double y_hat = 0.0;
    double v = 0.0;          // |p|/(m c), below the speed cap
    double alpha_eff = 0.0;  // z^2 alpha
    double cos_py = 1.0;
};

struct DecoherenceResult {
    double s = 0.0;          // exponent; visibility suppression is e^{-s}
    double abs_error = 0.0;
};

// ln( sinh(pi t) / (pi t) ), the growth function of the far-separated
// exponent.  Behaves like (pi t)^2/6 at small t and pi t - ln(2 pi t) at
// large t; evaluated without overflow for any t >= 0.
double log_sinh_growth(double t);

// Full double-time exponent with the drift of the packet kept in the kernel
// arguments.  The two branches travel with the same velocity v along p while
// held y apart; the integrand subtracts the two cross-branch kernels from
// the on-branch one, so the result vanishes identically at y = 0.
DecoherenceResult s_exact(const DecoherencePoint& pt, double tol = 1e-8);

// Drift-free reduction of the same exponent (packet displacement during the
// correlation time neglected).  Single radial integral
//   S = alpha v^2 (2/pi) int_0^inf dk/k 1/(e^k-1) (1-cos(k tau))
//       [ 4/3 - 4 j1(k y)/(k y) ]
// Non-negative for all tau, y; tiny negative round-off is clamped to zero.
DecoherenceResult s_reduced(const DecoherencePoint& pt, double tol = 1e-9);

// Asymptotic laws.  All return the exponent itself (alpha v^2 included).
double s_large_y(double tau_hat, double v, double alpha_eff);
double s_small_t_small_y(const DecoherencePoint& pt);
double s_stationary(double y_hat, double v, double alpha_eff, double tol = 1e-10);

enum class Regime {
    small_t_large_y,
    large_t_large_y,
    small_t_small_y,
    large_t_small_y,
    general
};

// Quadrant classification with a guard band: points with tau_hat or y_hat in
// [0.5, 2] are "general" and get no closed form.
Regime regime_classify(double tau_hat, double y_hat);
const char* regime_name(Regime r);

// Closed-form value for the regime, NaN for Regime::general.
double regime_closed_form(Regime r, const DecoherencePoint& pt);

// Collective exponent for N packets sharing one separation axis at large y:
//   S_N = (4/(3 pi)) alpha L(tau) | sum_j z_j v_j |^2
// where alpha_unit is the single-charge coupling.  Scales as N^2 for aligned
// equal charges and vanishes for a neutral pair moving together.
struct ChargedParticle {
    int charge_number = 1;
    std::array<double, 3> velocity{0.0, 0.0, 0.0};  // v/c per component
};

double n_particle_exponent(const std::vector<ChargedParticle>& particles,
                           double tau_hat, double alpha_unit);

}  // namespace thermdec::decoherence
