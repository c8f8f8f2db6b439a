#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace thermdec::wigner {

// Grid caps shared by every transform in this module.
inline constexpr std::size_t grid_cap = 4096;
inline constexpr std::size_t grid_min = 8;

// Density matrix in relative coordinate, rho(u) = rho(x - x') along the
// anti-diagonal through a fixed centre.  u_grid must be uniform, symmetric
// about zero, and rho Hermitian: rho(-u) = conj(rho(u)).
struct DensitySlice {
    std::vector<double> u_grid;
    std::vector<std::complex<double>> values;
};

struct WignerGrid {
    std::vector<double> k_grid;
    std::vector<double> values;
    double imag_residue = 0.0;  // largest |Im| discarded by the transform
};

// W(k) = (1/2pi) int e^{i k u} rho(u) du by the trapezoid rule on the slice.
// Every |k| must satisfy |k| <= pi / du (Nyquist), else config_error.
WignerGrid wigner_transform(const DensitySlice& slice,
                            const std::vector<double>& k_grid);

// Thermal momentum damping W_t(k) = exp(-b k^2 t) W_0(k); a semigroup in t.
WignerGrid momentum_damping_evolve(const WignerGrid& w0, double b, double t);

// Density matrix resolved in centre q and relative u coordinates, row-major
// values[iq * u_grid.size() + iu].  q_grid must be uniform with >= 4 points.
struct DensitySheet {
    std::vector<double> q_grid;
    std::vector<double> u_grid;
    std::vector<std::complex<double>> values;
};

// Action of the momentum-diffusion generator in this representation:
//   (D rho)(q, u) = b d^2 rho / dq^2
// by the central 3-point stencil (one-sided second-order at the edges).
// Annihilates anything translation invariant in q.
DensitySheet double_commutator_apply(const DensitySheet& sheet, double b);

// rho(u) = exp(-a u^2 / 2 - i p u) sampled on a symmetric uniform grid, the
// standard closed-form check: W(k) = exp(-(k-p)^2/(2a)) / sqrt(2 pi a).
DensitySlice gaussian_slice(double a, double p, double u_max, std::size_t n);

}  // namespace thermdec::wigner
