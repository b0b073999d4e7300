#pragma once

// Physical constants (SI, CODATA 2018) and the published cesium D2-line data
// used throughout the library. Frequencies are angular (rad/s) unless a name
// says otherwise.

#include <numbers>

namespace eitmem::constants {

inline constexpr double hbar = 1.054571817e-34;          // J s
inline constexpr double k_boltzmann = 1.380649e-23;      // J/K
inline constexpr double bohr_magneton = 9.2740100783e-24; // J/T
inline constexpr double speed_of_light = 2.99792458e8;   // m/s

inline constexpr double gauss_to_tesla = 1e-4;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

} // namespace eitmem::constants

namespace eitmem::cesium {

// 133Cs, D2 line (6S_1/2 -> 6P_3/2), Steck "Cesium D Line Data".
inline constexpr double mass = 2.20694650e-25;             // kg
inline constexpr double wavelength = 852.34727582e-9;      // m
inline constexpr double natural_linewidth =
    constants::two_pi * 5.2227e6;                          // rad/s
inline constexpr double nuclear_spin = 3.5;                // I = 7/2

// Fine-structure and nuclear g-factors.
inline constexpr double g_j_ground = 2.00254032;  // 6S_1/2
inline constexpr double g_j_excited = 1.33400;    // 6P_3/2
inline constexpr double g_i = -0.00039885395;

// 6P_3/2 hyperfine intervals (adjacent F' levels), published values.
inline constexpr double splitting_32_hz = 151.2247e6;  // F'=2 <-> F'=3
inline constexpr double splitting_43_hz = 201.2871e6;  // F'=3 <-> F'=4
inline constexpr double splitting_54_hz = 251.0916e6;  // F'=4 <-> F'=5

} // namespace eitmem::cesium
