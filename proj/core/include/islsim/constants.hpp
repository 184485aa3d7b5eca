#pragma once

#include <numbers>

namespace islsim::constants {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// WGS-84 mean Earth radius [m] and geocentric gravitational constant [m^3/s^2].
inline constexpr double kEarthRadius = 6371.0e3;
inline constexpr double kEarthMu = 3.986004418e14;

inline constexpr double kSpeedOfLight = 2.998e8;  // [m/s]
inline constexpr double kBoltzmann = 1.380649e-23;  // [J/K]

}  // namespace islsim::constants
