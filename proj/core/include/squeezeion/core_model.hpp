#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "squeezeion/types.hpp"

namespace squeezeion {

// Dimensionless radial confinement strength of the rotating crystal:
//   beta_r = omega_r (omega_c - omega_r) / omega_z^2 - 1/2.
// Throws invalid-trap when the combination is non-positive (no planar crystal).
double radial_confinement(const TrapParams& trap);

// Effective single-ion trap potential (joules) at axial offset z and cylindrical
// radius rho, in the rotating frame: (1/2) M wz^2 (z^2 + beta_r rho^2) with wz
// the angular axial frequency.
double trap_potential_energy(const TrapParams& trap, double z_m, double rho_m);

// Normal-mode frame of the parametrically driven oscillator
//   H = -delta a^dag a + i (g/2)(a^2 e^{-i phi} - a^dag^2 e^{i phi}).
// Requires delta > g >= 0 (throws unstable-regime otherwise):
//   r = (1/4) ln((delta+g)/(delta-g)),  delta' = sqrt(delta^2 - g^2),
//   f' = f (cosh r + e^{i delta_phi_c} sinh r).
// delta, g, f in rad/s.
BogoliubovFrame bogoliubov_frame(double delta, double g, double f, double delta_phi_c);

// Decibel measures of a squeezing parameter r:
//   {amplitude gain 10 log10 e^r, variance change 10 log10 e^{2r}}.
std::pair<double, double> squeezing_db(double r);

// Pre-drawn Gaussian detuning offsets (rad/s) for noise.sigma_hz rms fluctuation:
// epsilon_k ~ Normal(0, (2 pi sigma_hz)^2), mt19937_64(seed) + Box-Muller.
// Empty when sigma_hz == 0.
std::vector<double> gaussian_offsets(const NoiseModel& noise);

struct AverageResult {
  double mean{};
  double rejected_fraction{};
  std::size_t n_valid{};
};

// Fraction of rejected samples above which noise-averaged single-point
// evaluators refuse to report a mean.
inline constexpr double rejected_fraction_ceiling = 1e-3;

// Average fn(epsilon) over Gaussian detuning offsets. fn returns nullopt to
// reject a sample (e.g. the offset drives the model unstable). sigma_hz == 0
// bypasses sampling entirely and returns fn(0). Throws domain-error when every
// sample is rejected. Callers that need a hard ceiling check the
// rejected_fraction against rejected_fraction_ceiling.
AverageResult gaussian_average(const std::function<std::optional<double>(double)>& fn,
                               const NoiseModel& noise);

}  // namespace squeezeion
