#pragma once

// Cesium D2 level structure: the two hyperfine ground manifolds (F=3, F=4),
// the four excited manifolds F' = 2..5 with their hyperfine offsets, Lande
// factors, and the relative sigma+ dipole amplitudes for every Zeeman channel.
// Amplitudes are dimensionless (units of the reduced J->J' dipole moment);
// the absolute scale is fixed downstream by the optical-depth calibration.

#include <array>
#include <cmath>
#include <stdexcept>

#include "eitmem/constants.hpp"
#include "eitmem/wigner.hpp"

namespace eitmem {

enum class GroundManifold { f3, f4 };  // probe ground / storage ground

struct LevelScheme {
    double linewidth = 0.0;   // excited-state decay rate Gamma, rad/s
    double wavelength = 0.0;  // m
    double mass = 0.0;        // kg

    double lande_f3 = 0.0;
    double lande_f4 = 0.0;
    std::array<double, 4> lande_excited{};   // index F'-2
    std::array<double, 4> excited_offset{};  // rad/s relative to F'=4, index F'-2

    // Relative sigma+ dipole amplitudes d(F, m -> F', m+1), index [m+3][F'-2].
    std::array<std::array<double, 4>, 7> probe_amp{};    // from F=3
    std::array<std::array<double, 4>, 7> control_amp{};  // from F=4

    static constexpr int f_excited_min = 2;
    static constexpr int f_excited_max = 5;
    static constexpr int m_max = 3;

    double probe_dipole(int m, int f_ex) const {
        return probe_amp[static_cast<size_t>(m + 3)][static_cast<size_t>(f_ex - 2)];
    }
    double control_dipole(int m, int f_ex) const {
        return control_amp[static_cast<size_t>(m + 3)][static_cast<size_t>(f_ex - 2)];
    }
    double splitting(int f_ex) const {  // rad/s, relative to F'=4
        return excited_offset[static_cast<size_t>(f_ex - 2)];
    }
    double lande(GroundManifold g) const {
        return g == GroundManifold::f3 ? lande_f3 : lande_f4;
    }
    double lande_ex(int f_ex) const {
        return lande_excited[static_cast<size_t>(f_ex - 2)];
    }

    // Reference control transition: F=4, m=0 -> F'=4, m'=1 (the most strongly
    // coupled s -> F'=4 channel). Global control Rabi frequencies are quoted
    // on this transition and scaled per channel by dipole ratios.
    double control_reference_dipole() const { return control_dipole(0, 4); }
};

namespace detail {

inline double lande_g_factor(double f, double i, double j, double g_j, double g_i) {
    const double ff = f * (f + 1.0), ii = i * (i + 1.0), jj = j * (j + 1.0);
    return g_j * (ff - ii + jj) / (2.0 * ff) + g_i * (ff + ii - jj) / (2.0 * ff);
}

// Relative F -> F' strength for the D2 line (J=1/2 -> J'=3/2), carrying the
// conventional sign: (-1)^(F'+J+1+I) sqrt((2F'+1)(2J+1)) {J J' 1; F' F I}.
inline double reduced_strength(int f, int f_ex, double i) {
    const double j = 0.5, j_ex = 1.5;
    const double six_j = wigner::wigner_6j(j, j_ex, 1.0, f_ex, f, i);
    const double phase_exp = f_ex + j + 1.0 + i;
    const double sign =
        (static_cast<long long>(std::llround(phase_exp)) % 2 == 0) ? 1.0 : -1.0;
    return sign * std::sqrt((2.0 * f_ex + 1.0) * (2.0 * j + 1.0)) * six_j;
}

} // namespace detail

/// Builds the full 133Cs D2 scheme from published constants.
inline LevelScheme cesium_d2_scheme() {
    using namespace cesium;
    LevelScheme s;
    s.linewidth = natural_linewidth;
    s.wavelength = wavelength;
    s.mass = mass;

    const double i = nuclear_spin;
    s.lande_f3 = detail::lande_g_factor(3.0, i, 0.5, g_j_ground, g_i);
    s.lande_f4 = detail::lande_g_factor(4.0, i, 0.5, g_j_ground, g_i);
    for (int f_ex = 2; f_ex <= 5; ++f_ex)
        s.lande_excited[static_cast<size_t>(f_ex - 2)] =
            detail::lande_g_factor(f_ex, i, 1.5, g_j_excited, g_i);

    const double w32 = constants::two_pi * splitting_32_hz;
    const double w43 = constants::two_pi * splitting_43_hz;
    const double w54 = constants::two_pi * splitting_54_hz;
    s.excited_offset = {-(w43 + w32), -w43, 0.0, w54};

    for (int m = -3; m <= 3; ++m) {
        for (int f_ex = 2; f_ex <= 5; ++f_ex) {
            // sigma+ (m' = m+1) with m' inside the manifold, |Delta F| <= 1
            const bool reachable = std::abs(m + 1) <= f_ex;
            const double cg = reachable
                ? wigner::clebsch_gordan(3.0, m, 1.0, 1.0, f_ex, m + 1.0) : 0.0;
            const double cg_c = reachable
                ? wigner::clebsch_gordan(4.0, m, 1.0, 1.0, f_ex, m + 1.0) : 0.0;
            s.probe_amp[static_cast<size_t>(m + 3)][static_cast<size_t>(f_ex - 2)] =
                (f_ex <= 4) ? detail::reduced_strength(3, f_ex, i) * cg : 0.0;
            s.control_amp[static_cast<size_t>(m + 3)][static_cast<size_t>(f_ex - 2)] =
                (f_ex >= 3) ? detail::reduced_strength(4, f_ex, i) * cg_c : 0.0;
        }
    }

    // Consistency check on the off-resonant structure: the two levels the
    // control reaches besides F'=4 must sit 30..50 linewidths away.
    for (int f_ex : {3, 5}) {
        const double gap = std::abs(s.splitting(f_ex)) / s.linewidth;
        if (gap < 30.0 || gap > 50.0)
            throw std::logic_error("cesium_d2_scheme: hyperfine interval outside "
                                   "the expected 30..50 linewidth window");
    }
    return s;
}

/// Zeeman detuning of the (F,m) -> (F', m+1) transition in a field B (gauss):
/// mu_B [m g_F - (m+1) g_F'] B / hbar, in rad/s.
inline double zeeman_detuning(int m, GroundManifold ground, int f_ex,
                              double b_gauss, const LevelScheme& s) {
    const double b = b_gauss * constants::gauss_to_tesla;
    return constants::bohr_magneton *
           (m * s.lande(ground) - (m + 1) * s.lande_ex(f_ex)) * b /
           constants::hbar;
}

} // namespace eitmem
