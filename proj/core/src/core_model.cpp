#include "squeezeion/core_model.hpp"

#include <cmath>
#include <random>

#include "squeezeion/errors.hpp"
#include "squeezeion/units.hpp"

namespace squeezeion {

void TrapParams::validate() const {
  require(omega_z_hz > 0.0, errc::config_error, "trap.omega_z_hz must be > 0");
  require(omega_c_hz > 0.0, errc::config_error, "trap.omega_c_hz must be > 0");
  require(omega_r_hz > 0.0, errc::config_error, "trap.omega_r_hz must be > 0");
  require(n_ions >= 1, errc::config_error, "trap.n_ions must be >= 1");
  require(mass_kg > 0.0, errc::config_error, "trap.mass_kg must be > 0");
  require(charge_c > 0.0, errc::config_error, "trap.charge_c must be > 0");
}

void DriveParams::validate() const {
  require(f >= 0.0, errc::config_error, "drive.f_hz must be >= 0");
  require(gamma >= 0.0, errc::config_error, "drive.gamma_per_s must be >= 0");
  require(tau > 0.0, errc::config_error, "drive.tau_s must be > 0");
  require(t_pi >= 0.0, errc::config_error, "drive.t_pi_s must be >= 0");
  require(g >= 0.0, errc::config_error, "drive.g_hz must be >= 0");
}

void MotionalState::validate() const {
  require(nbar >= 0.0, errc::config_error, "motion.nbar must be >= 0");
  require(r >= 0.0, errc::config_error, "motion.r must be >= 0");
}

void NoiseModel::validate() const {
  require(sigma_hz >= 0.0, errc::config_error, "noise.sigma_hz must be >= 0");
  require(n_samples >= 1, errc::config_error, "noise.n_samples must be >= 1");
}

double radial_confinement(const TrapParams& trap) {
  trap.validate();
  const double beta_r =
      trap.omega_r_hz * (trap.omega_c_hz - trap.omega_r_hz) /
          (trap.omega_z_hz * trap.omega_z_hz) -
      0.5;
  require(beta_r > 0.0, errc::invalid_trap,
          "no radial confinement: omega_r (omega_c - omega_r) / omega_z^2 <= 1/2");
  return beta_r;
}

double trap_potential_energy(const TrapParams& trap, double z_m, double rho_m) {
  const double beta_r = radial_confinement(trap);
  const double wz = to_angular(trap.omega_z_hz);
  return 0.5 * trap.mass_kg * wz * wz * (z_m * z_m + beta_r * rho_m * rho_m);
}

BogoliubovFrame bogoliubov_frame(double delta, double g, double f, double delta_phi_c) {
  require(g >= 0.0, errc::domain_error, "parametric rate g must be >= 0");
  require(delta > g, errc::unstable_regime,
          "parametric drive requires delta > g for a stable normal mode");
  BogoliubovFrame frame;
  frame.r = 0.25 * std::log((delta + g) / (delta - g));
  frame.delta_prime = std::sqrt((delta - g) * (delta + g));
  frame.f_prime = f * (std::cosh(frame.r) +
                       std::exp(cd(0.0, delta_phi_c)) * std::sinh(frame.r));
  frame.delta_phi_c = delta_phi_c;
  return frame;
}

std::pair<double, double> squeezing_db(double r) {
  const double amplitude_db = 10.0 * std::log10(std::exp(r));
  return {amplitude_db, 2.0 * amplitude_db};
}

std::vector<double> gaussian_offsets(const NoiseModel& noise) {
  noise.validate();
  if (noise.sigma_hz == 0.0) return {};
  const double sigma = to_angular(noise.sigma_hz);
  std::mt19937_64 rng(noise.seed);
  // Box-Muller on explicit 53-bit uniforms: the sample stream is pinned by this
  // code, not by the standard library's unspecified normal_distribution.
  auto uniform = [&rng]() {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
  };
  std::vector<double> out(static_cast<std::size_t>(noise.n_samples));
  for (std::size_t k = 0; k < out.size(); k += 2) {
    const double u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    out[k] = sigma * radius * std::cos(two_pi * u2);
    if (k + 1 < out.size()) out[k + 1] = sigma * radius * std::sin(two_pi * u2);
  }
  return out;
}

AverageResult gaussian_average(const std::function<std::optional<double>(double)>& fn,
                               const NoiseModel& noise) {
  noise.validate();
  if (noise.sigma_hz == 0.0) {
    const auto value = fn(0.0);
    require(value.has_value(), errc::domain_error,
            "model evaluation rejected at zero detuning offset");
    return AverageResult{*value, 0.0, 1};
  }
  const std::vector<double> offsets = gaussian_offsets(noise);
  double sum = 0.0;
  std::size_t n_valid = 0;
  for (double eps : offsets) {  // sequential index order: thread-count independent
    if (const auto value = fn(eps)) {
      sum += *value;
      ++n_valid;
    }
  }
  require(n_valid > 0, errc::domain_error,
          "every noise sample was rejected during averaging");
  AverageResult result;
  result.n_valid = n_valid;
  result.mean = sum / static_cast<double>(n_valid);
  result.rejected_fraction =
      1.0 - static_cast<double>(n_valid) / static_cast<double>(offsets.size());
  return result;
}

}  // namespace squeezeion
