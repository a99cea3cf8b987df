#pragma once

#include <complex>
#include <cstdint>

namespace squeezeion {

using cd = std::complex<double>;

// Static trap and crystal parameters. Frequencies in ordinary hertz.
struct TrapParams {
  double omega_z_hz{};  // axial center-of-mass frequency
  double omega_c_hz{};  // cyclotron frequency
  double omega_r_hz{};  // crystal rotation frequency
  int n_ions{1};
  double mass_kg{};
  double charge_c{};

  void validate() const;  // throws config-error / invalid-trap
};

// Spin-dependent force and parametric-drive settings for one experiment.
// NOTE: `f` is an angular coupling rate (rad/s); `delta` and `g` enter in rad/s
// here (the config layer converts from the hertz fields of the run file).
struct DriveParams {
  double f{};             // ODF coupling rate, rad/s
  double phi_odf{};       // ODF phase, rad
  double delta{};         // detuning from the axial mode, rad/s
  double gamma{};         // single-spin decoherence rate, 1/s
  double tau{};           // free-evolution arm time, s
  double t_pi{};          // pi-pulse gap time, s
  double g{};             // parametric coupling rate, rad/s
  double theta{};         // squeeze-axis angle, rad
  double delta_phi{};     // stroboscopic relative phase, rad
  double delta_phi_c{};   // continuous-protocol parametric phase, rad

  void validate() const;  // throws config-error
};

// Initial motional state of the addressed mode.
struct MotionalState {
  double nbar{};  // thermal occupation
  cd beta{};      // coherent displacement to sense
  double r{};     // squeezing parameter already imprinted on the mode

  void validate() const;  // throws config-error
};

// Gaussian drive-frequency fluctuation model and sampling controls.
struct NoiseModel {
  double sigma_hz{};          // rms frequency fluctuation, ordinary Hz
  int n_samples{1};           // Monte Carlo samples when sigma_hz > 0
  std::uint64_t seed{0};

  void validate() const;  // throws config-error
};

// Parameters of the squeezed normal-mode frame of the parametrically driven
// oscillator: a = cosh(r) b + e^{i delta_phi_c} sinh(r) b^dagger, with the
// drive rotated away at detuning delta_prime.
struct BogoliubovFrame {
  double r{};            // frame squeezing parameter, tanh(2r) = ... built from g/delta
  double delta_prime{};  // dressed detuning sqrt(delta^2 - g^2), rad/s
  cd f_prime{};          // dressed spin-dependent force, rad/s
  double delta_phi_c{};  // parametric phase carried into the frame
};

}  // namespace squeezeion
