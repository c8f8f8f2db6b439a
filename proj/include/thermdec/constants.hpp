#pragma once

#include <array>
#include <cstdint>
#include <string>

// Pinned physical constants (CODATA 2018).  Values are fixed here rather than
// pulled from a library so that every build produces bit-identical numbers.
// Units: energies in eV, lengths in m, times in s.

namespace thermdec::constants {

inline constexpr double hbar_c_ev_m      = 1.973269804e-7;   // hbar*c [eV m]
inline constexpr double k_boltzmann_ev_k = 8.617333262e-5;   // k_B [eV/K]
inline constexpr double fine_structure   = 7.2973525693e-3;  // e^2/(4 pi eps0 hbar c)
inline constexpr double electron_mass_ev = 5.1099895000e5;   // m_e c^2 [eV]
inline constexpr double speed_of_light   = 2.99792458e8;     // c [m/s], exact
inline constexpr double hbar_ev_s        = 6.582119569e-16;  // hbar [eV s]

inline constexpr double pi = 3.14159265358979323846;

// Hard cap on |p|/(m c).  The drift expansion of the exponent keeps only the
// leading order in the speed ratio; beyond this cap the neglected terms are
// not controlled.
inline constexpr double speed_ratio_cap = 0.1;

// Coefficients of the asymptotic decay laws, kept in one place so that the
// CLI, the validation suite and the tests all print/compare the same numbers.
struct NamedConstant {
    const char* name;
    double value;
    const char* role;
};

// The "alt_*" rows are candidate values that circulate for the same
// coefficients but are exactly a factor of two low; the validation suite
// discriminates between each pair by direct quadrature.
inline constexpr std::array<NamedConstant, 11> decay_law_constants = {{
    {"two_pi_over_9", 0.69813170079773183,
     "small-time curvature of the far-separated exponent: S/(alpha v^2 tau^2) as tau -> 0"},
    {"four_over_3pi", 0.42441318157838756,
     "linear-growth constant of the far-separated exponent: S = (4/3pi) alpha v^2 L(tau)"},
    {"two_pi3_over_225", 0.27561134826933173,
     "joint small-time small-separation law: S = c alpha v^2 tau^2 y^2"},
    {"two_pi_over_45", 0.13962634015954637,
     "small-separation limit of the stationary exponent: S = c alpha v^2 y^2"},
    {"one_half", 0.5,
     "large-separation slope of the stationary exponent: S -> (1/2) alpha v^2 y"},
    {"two_over_3pi", 0.21220659078919378,
     "two-packet linear-growth constant: S12 = (2/3pi) alpha dv^2 L(tau)"},
    {"pi_over_9", 0.34906585039886592,
     "small-time curvature of the two-packet exponent; also the alt single-packet curvature (factor 2 low, rejected by quadrature)"},
    {"pi_over_45", 0.069813170079773183,
     "alt small-separation stationary coefficient (factor 2 low, rejected by quadrature)"},
    {"one_over_3pi", 0.10610329539459689,
     "alt two-packet constant (factor 2 low, rejected by quadrature)"},
    {"pi_over_18", 0.17453292519943296,
     "alt two-packet small-time curvature (factor 2 low, rejected by quadrature)"},
    {"coincidence_zero_lag", 0.69813170079773183,
     "contracted kernel at zero lag and zero separation; equals the small-time curvature"},
}};

// Stable 64-bit digest of the full constants table.  Written into every JSON
// sidecar so downstream runs can detect a mismatched build.
std::uint64_t constants_table_hash();

// Human-readable rendering used by the CLI `constants` command.
std::string constants_table_text();

}  // namespace thermdec::constants
