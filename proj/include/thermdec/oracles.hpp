#pragma once

#include <cstdint>

#include "thermdec/decoherence.hpp"

// Independent evaluation routes for spot-checking the quadrature engines.
// Nothing here shares integration machinery with the main code paths; the
// only common ground is the constants table and elementary functions.

namespace thermdec::oracles {

struct McEstimate {
    double value = 0.0;
    double std_error = 0.0;
    long samples = 0;
};

// Monte Carlo estimate of the contracted kernel
//   K(y, tau, c) = (pi/3) E[ cos(kappa tau) (1 - (p.khat)^2) cos(kappa y khat_z) ]
// with kappa drawn from kappa/(e^kappa - 1)/zeta(2) via a geometric-Gamma
// mixture and khat uniform on the sphere.  Samples are processed in fixed
// blocks of 65536 whose partial sums are reduced in index order, so the
// estimate is bitwise independent of the worker count.
McEstimate mc_kernel_oracle(double y_hat, double tau_hat, double cos_pr,
                            long samples, std::uint64_t seed, int n_workers = 1);

struct TrapezoidEstimate {
    double value = 0.0;
    double error_bar = 0.0;
    int n_coarse = 0;
};

// Raw 2-D trapezoid over both time arguments of the exact exponent (no
// reduction to a single integral), with an internal fixed-grid Simpson rule
// for the kernel.  Richardson-extrapolated from n and 2n panels per axis;
// the error bar is the extrapolation difference.
TrapezoidEstimate trapezoid_s_oracle(const decoherence::DecoherencePoint& pt, int n);

// sum_{k>=1} k^{-s} by direct descending summation with an Euler-Maclaurin
// tail, certified to 1e-12 for integer s >= 2.
double zeta_sum(int s);

// Semi-closed form of the reduced exponent: the angular integral done first,
// leaving a one-dimensional integral of log-sinh terms.  Own Simpson rule
// and own log-sinh implementation.
double s_reduced_closed_oracle(const decoherence::DecoherencePoint& pt);

}  // namespace thermdec::oracles
