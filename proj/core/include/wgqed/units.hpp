#pragma once

// Unit conventions used throughout the library.
//
// Internally every rate and frequency is an angular frequency in rad/us.
// All user-facing numbers follow the omega/2pi convention instead: a
// "gamma1_MHz" of 26 means gamma1/2pi = 26 MHz. Absolute frequencies
// (qubit and drive) are quoted in GHz, detunings and rates in MHz, time
// in us, distances in mm. 1 GHz = 1000 MHz and 1 rad/us corresponds to
// 1/(2pi) MHz, so round-tripping through these helpers is exact up to
// floating point.

namespace wgqed {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// omega/2pi in MHz -> rad/us
inline constexpr double angular_from_MHz(double f_MHz) { return kTwoPi * f_MHz; }

// rad/us -> omega/2pi in MHz
inline constexpr double MHz_from_angular(double omega) { return omega / kTwoPi; }

inline constexpr double MHz_from_GHz(double f_GHz) { return 1e3 * f_GHz; }
inline constexpr double GHz_from_MHz(double f_MHz) { return 1e-3 * f_MHz; }

inline constexpr double angular_from_GHz(double f_GHz) {
  return kTwoPi * MHz_from_GHz(f_GHz);
}

}  // namespace wgqed
