#pragma once

namespace thermdec::greens {

// Angular averages of the transverse photon projector against plane waves.
// With j0, j1 the spherical Bessel functions,
//   T_delta(u) = j0(u) - j1(u)/u        (coefficient of a.b)
//   T_r(u)     = -j0(u) + 3 j1(u)/u     (coefficient of (a.r)(b.r))
// Both are even; the trace identity 3 T_delta + T_r = 2 j0 holds exactly.
struct TransverseWeights {
    double t_delta;
    double t_r;
};

TransverseWeights transverse_weights(double u);

// 2/3 - T_delta(u) - T_r(u) = 2/3 - 2 j1(u)/u, evaluated without the
// cancellation the direct difference suffers at small u.
double transverse_trace_gap(double u);

// Symmetrised two-time correlation kernel of the thermal field, contracted
// with a single direction p on both sides:
//   K(y, tau, c) = (2/pi) int_0^inf dk k/(e^k-1) cos(k tau)
//                  [ T_delta(k y) + c^2 T_r(k y) ]
// where c is the cosine between p and the separation axis.  y >= 0.
struct KernelPoint {
    double y_hat = 0.0;
    double tau_hat = 0.0;
    double cos_pr = 1.0;
};

double contracted_kernel(const KernelPoint& pt, double tol = 1e-10);

// Contraction with two different directions a, b; cos_ab = a.b,
// cos_ar = a.r, cos_br = b.r.  Reduces to contracted_kernel when a = b.
double bilinear_kernel(double y_hat, double tau_hat,
                       double cos_ab, double cos_ar, double cos_br,
                       double tol = 1e-10);

// K at zero separation, via the series route:
//   C(tau) = (4/(3 pi)) [ 1/(2 tau^2) - (pi^2/2) csch^2(pi tau) ]
// C(0) = 2 pi / 9; decays like 2/(3 pi tau^2).
double coincidence_limit(double tau_hat, double tol = 1e-12);

}  // namespace thermdec::greens
