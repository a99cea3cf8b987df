#include <doctest.h>

#include <cmath>
#include <optional>

#include "squeezeion/core_model.hpp"
#include "squeezeion/errors.hpp"
#include "squeezeion/units.hpp"

using namespace squeezeion;

namespace {

TrapParams reference_trap() {
  TrapParams trap;
  trap.omega_z_hz = 1.59e6;
  trap.omega_c_hz = 7.6e6;
  trap.omega_r_hz = 180e3;
  trap.n_ions = 86;
  trap.mass_kg = 1.4965e-26;
  trap.charge_c = 1.602e-19;
  return trap;
}

}  // namespace

TEST_CASE("radial confinement of the reference trap is weakly positive") {
  const double beta_r = radial_confinement(reference_trap());
  // Independent recomputation: 180e3 * 7.42e6 / 1.59e6^2 - 0.5.
  CHECK(beta_r == doctest::Approx(0.028301886792452824).epsilon(1e-9));
  CHECK(beta_r > 0.0);
  CHECK(beta_r < 0.1);  // planar crystals live just above the threshold
}

TEST_CASE("rotation outside the confinement window throws invalid-trap") {
  TrapParams trap = reference_trap();
  trap.omega_r_hz = 1e3;  // too slow: centrifugal limit
  CHECK_THROWS_WITH_AS(radial_confinement(trap),
                       doctest::Contains("no radial confinement"), error);
  try {
    radial_confinement(trap);
  } catch (const error& e) {
    CHECK(e.code() == errc::invalid_trap);
  }
}

TEST_CASE("trap parameter validation rejects non-physical values") {
  TrapParams trap = reference_trap();
  trap.mass_kg = 0.0;
  CHECK_THROWS_AS(trap.validate(), error);
  trap = reference_trap();
  trap.n_ions = 0;
  CHECK_THROWS_AS(trap.validate(), error);
}

TEST_CASE("trap potential is quadratic with the confinement ratio") {
  const TrapParams trap = reference_trap();
  const double beta_r = radial_confinement(trap);
  CHECK(trap_potential_energy(trap, 0.0, 0.0) == 0.0);
  const double ez = trap_potential_energy(trap, 1e-6, 0.0);
  const double erho = trap_potential_energy(trap, 0.0, 1e-6);
  CHECK(erho / ez == doctest::Approx(beta_r).epsilon(1e-12));
  // Doubling the offset quadruples the energy.
  CHECK(trap_potential_energy(trap, 2e-6, 0.0) == doctest::Approx(4.0 * ez));
}

TEST_CASE("bogoliubov frame satisfies its defining identities") {
  const double delta = to_angular(1250.0);
  const double g = to_angular(500.0);
  const double f = 450.0;
  const BogoliubovFrame frame = bogoliubov_frame(delta, g, f, 0.0);
  CHECK(std::tanh(2.0 * frame.r) == doctest::Approx(g / delta).epsilon(1e-12));
  CHECK(frame.delta_prime ==
        doctest::Approx(std::sqrt(delta * delta - g * g)).epsilon(1e-12));
  CHECK(frame.delta_prime * frame.delta_prime + g * g ==
        doctest::Approx(delta * delta).epsilon(1e-12));
  // Dressed force magnitude interpolates f e^{+r} .. f e^{-r} with the phase.
  const BogoliubovFrame aligned = bogoliubov_frame(delta, g, f, 0.0);
  CHECK(std::abs(aligned.f_prime) ==
        doctest::Approx(f * std::exp(aligned.r)).epsilon(1e-12));
  const BogoliubovFrame anti = bogoliubov_frame(delta, g, f, pi);
  CHECK(std::abs(anti.f_prime) ==
        doctest::Approx(f * std::exp(-anti.r)).epsilon(1e-12));
}

TEST_CASE("frame at zero parametric rate is trivial") {
  const BogoliubovFrame frame = bogoliubov_frame(1000.0, 0.0, 300.0, 0.7);
  CHECK(frame.r == 0.0);
  CHECK(frame.delta_prime == 1000.0);
  CHECK(frame.f_prime == cd(300.0, 0.0));
}

TEST_CASE("drive at or beyond the instability throws unstable-regime") {
  CHECK_THROWS_AS(bogoliubov_frame(1000.0, 1000.0, 1.0, 0.0), error);
  CHECK_THROWS_AS(bogoliubov_frame(900.0, 1000.0, 1.0, 0.0), error);
  try {
    bogoliubov_frame(1000.0, 1000.0, 1.0, 0.0);
  } catch (const error& e) {
    CHECK(e.code() == errc::unstable_regime);
  }
}

TEST_CASE("squeezing decibel measures") {
  const auto [amp_db, var_db] = squeezing_db(1.25);
  CHECK(amp_db == doctest::Approx(10.0 * std::log10(std::exp(1.25))).epsilon(1e-15));
  CHECK(var_db == doctest::Approx(2.0 * amp_db).epsilon(1e-15));
  // Two-decimal rounding of the r = 1.25 operating point.
  CHECK(std::round(amp_db * 100.0) / 100.0 == 5.43);
  CHECK(std::round(var_db * 100.0) / 100.0 == 10.86);
  CHECK(squeezing_db(0.0).first == 0.0);
}

TEST_CASE("gaussian offsets have the configured statistics") {
  NoiseModel noise;
  noise.sigma_hz = 40.0;
  noise.n_samples = 200000;
  noise.seed = 7;
  const auto eps = gaussian_offsets(noise);
  REQUIRE(eps.size() == 200000);
  double mean = 0.0;
  for (const double e : eps) mean += e;
  mean /= static_cast<double>(eps.size());
  double var = 0.0;
  for (const double e : eps) var += (e - mean) * (e - mean);
  var /= static_cast<double>(eps.size());
  const double sigma = to_angular(noise.sigma_hz);
  CHECK(std::abs(mean) < 3.0 * sigma / std::sqrt(double(eps.size())));
  CHECK(var == doctest::Approx(sigma * sigma).epsilon(0.02));
}

TEST_CASE("gaussian offsets are seed-deterministic") {
  NoiseModel noise;
  noise.sigma_hz = 10.0;
  noise.n_samples = 8;
  noise.seed = 42;
  const auto a = gaussian_offsets(noise);
  const auto b = gaussian_offsets(noise);
  CHECK(a == b);
  noise.seed = 43;
  CHECK(gaussian_offsets(noise) != a);
  noise.sigma_hz = 0.0;
  CHECK(gaussian_offsets(noise).empty());
}

TEST_CASE("gaussian_average bypasses sampling at zero width") {
  NoiseModel noise;
  noise.sigma_hz = 0.0;
  noise.n_samples = 1000;
  const auto result =
      gaussian_average([](double eps) { return std::optional<double>(3.0 + eps); },
                       noise);
  CHECK(result.mean == 3.0);
  CHECK(result.rejected_fraction == 0.0);
  CHECK(result.n_valid == 1);
  CHECK_THROWS_AS(
      gaussian_average([](double) { return std::optional<double>(); }, noise),
      error);
}

TEST_CASE("gaussian_average accounts for rejected samples") {
  NoiseModel noise;
  noise.sigma_hz = 40.0;
  noise.n_samples = 4000;
  noise.seed = 11;
  // Reject the negative half-axis: roughly half the draws.
  const auto result = gaussian_average(
      [](double eps) {
        return eps < 0.0 ? std::optional<double>() : std::optional<double>(1.0);
      },
      noise);
  CHECK(result.mean == 1.0);
  CHECK(result.rejected_fraction == doctest::Approx(0.5).epsilon(0.05));
  CHECK(result.n_valid + static_cast<std::size_t>(
                             result.rejected_fraction * 4000.0 + 0.5) ==
        4000);
  // All rejected: domain-error.
  CHECK_THROWS_AS(
      gaussian_average([](double) { return std::optional<double>(); }, noise),
      error);
}
