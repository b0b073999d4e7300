#pragma once

// Analytic decoherence channels of the memory: transit time out of the beam,
// motional dephasing across the probe-control angle, and the collective-state
// overlap decay under a magnetic gradient. The gradient figures are shared
// with the susceptibility through MediumConfig.

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "eitmem/bloch.hpp"
#include "eitmem/constants.hpp"
#include "eitmem/level_scheme.hpp"

namespace eitmem {

struct DephasingParams {
    double beam_diameter = 0.0;    // m
    double crossing_angle = 0.0;   // rad
    double temperature = 0.0;      // K
    double mass = 0.0;             // kg
    double wavelength = 0.0;       // m
    double gradient = 0.0;         // G/cm
    double length = 0.0;           // m
    double lande_difference = 0.0; // g_{F=4} - g_{F=3}

    double thermal_velocity() const {
        return std::sqrt(constants::k_boltzmann * temperature / mass);
    }

    static DephasingParams from(const MediumConfig& medium, const LevelScheme& s,
                                double beam_diameter, double crossing_angle) {
        DephasingParams p;
        p.beam_diameter = beam_diameter;
        p.crossing_angle = crossing_angle;
        p.temperature = medium.temperature;
        p.mass = s.mass;
        p.wavelength = s.wavelength;
        p.gradient = medium.gradient;
        p.length = medium.length;
        p.lande_difference = s.lande_f4 - s.lande_f3;
        return p;
    }
};

/// Transit time of a thermal atom across the probe beam.
inline double transit_time(const DephasingParams& p) {
    if (!(p.temperature > 0.0))
        throw std::invalid_argument("transit_time: temperature must be > 0");
    return p.beam_diameter / p.thermal_velocity();
}

/// Motional dephasing time across the probe-control wavevector mismatch.
/// A zero crossing angle means no dephasing; reported as unbounded.
inline std::optional<double> motional_dephasing_time(const DephasingParams& p) {
    if (p.crossing_angle == 0.0) return std::nullopt;
    return p.wavelength / (constants::two_pi * std::sin(p.crossing_angle)) *
           std::sqrt(p.mass / (constants::k_boltzmann * p.temperature));
}

/// Larmor phase picked up by the |s_m><g_m| coherence at position z after t.
inline double magnetic_phase(int m, double z, double t, const DephasingParams& p) {
    if (std::abs(m) > 3) throw std::invalid_argument("magnetic_phase: |m| > 3");
    const double b = p.gradient * z * 100.0 * constants::gauss_to_tesla;  // B(z)
    return constants::bohr_magneton * m * p.lande_difference * b * t /
           constants::hbar;
}

/// Collective spin-wave state: per-sublevel probe/control coupling ratios and
/// the Gaussian dephasing rates of each Zeeman component.
struct CollectiveState {
    std::array<double, 7> weight{};       // population weights p_m
    std::array<double, 7> ratio_sq{};     // R_m^2
    std::array<double, 7> inv_tau{};      // 1/tau_m (1/s), 0 for m = 0 or B0 = 0

    double overlap_efficiency(double t) const {
        double num = 0.0, den = 0.0;
        for (int i = 0; i < 7; ++i) {
            const double w = weight[static_cast<size_t>(i)] *
                             ratio_sq[static_cast<size_t>(i)];
            const double x = t * inv_tau[static_cast<size_t>(i)];
            num += w * std::exp(-x * x);
            den += w;
        }
        const double r = num / den;
        return r * r;
    }
};

inline CollectiveState make_collective_state(const std::array<double, 7>& populations,
                                             const DephasingParams& p,
                                             const LevelScheme& scheme) {
    CollectiveState cs;
    const double b0_si = p.gradient * 100.0 * constants::gauss_to_tesla;  // T/m
    for (int m = -3; m <= 3; ++m) {
        const size_t i = static_cast<size_t>(m + 3);
        cs.weight[i] = populations[i];
        // probe/control coupling ratio on the F'=4 channel; equals the
        // Clebsch-Gordan ratio up to a reduced-strength factor common to all
        // m, which cancels in the normalized overlap
        const double r = scheme.probe_dipole(m, 4) / scheme.control_dipole(m, 4);
        cs.ratio_sq[i] = r * r;
        cs.inv_tau[i] = constants::bohr_magneton * m * p.lande_difference *
                        b0_si * p.length /
                        (2.0 * std::sqrt(2.0) * constants::hbar);
    }
    return cs;
}

/// eta_s(t): squared overlap of the stored collective state with itself after
/// a storage time t under the magnetic gradient. Normalized to 1 at t = 0.
inline double collective_overlap_efficiency(double t,
                                            const std::array<double, 7>& populations,
                                            const DephasingParams& p,
                                            const LevelScheme& scheme) {
    return make_collective_state(populations, p, scheme).overlap_efficiency(t);
}

} // namespace eitmem
