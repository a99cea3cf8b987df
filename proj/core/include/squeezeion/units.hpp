#pragma once

namespace squeezeion {

inline constexpr double pi = 3.14159265358979323846264338327950288;
inline constexpr double two_pi = 2.0 * pi;

// Frequencies cross the public API in ordinary hertz; internal formulas use
// angular frequency (rad/s). Conversions happen exactly once, at the boundary.
constexpr double to_angular(double hz) { return two_pi * hz; }
constexpr double to_ordinary_hz(double rad_per_s) { return rad_per_s / two_pi; }

}  // namespace squeezeion
