#pragma once

namespace braggsim::constants {

// SI constants used by the thermal-spread helper.
inline constexpr double k_boltzmann = 1.380649e-23;           // J/K (exact)
inline constexpr double atomic_mass_unit = 1.66053906660e-27; // kg
inline constexpr double cesium_mass = 132.90545196 * atomic_mass_unit; // kg

// Default atomic-transition parameters. These are implementation-chosen
// standards for the cesium D2 line, exposed in the config so any transition
// can be substituted.
inline constexpr double default_lambda0_nm = 852.347; // transition wavelength
inline constexpr double default_gamma0_mhz = 5.2;     // natural linewidth

inline constexpr double speed_of_light = 2.99792458e8; // m/s (exact)

} // namespace braggsim::constants
