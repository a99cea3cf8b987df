#pragma once

#include <vector>

#include "squeezeion/types.hpp"

namespace squeezeion {

// Spin-echo interferometry with the spin-dependent force and the parametric
// drive applied continuously (both arms plus the pi-pulse gap). All physics is
// evaluated in the squeezed normal-mode frame (BogoliubovFrame).
struct ContinuousConfig {
  int n_ions{1};
  DriveParams drive;     // uses f, phi_odf, delta, gamma, tau, t_pi, g, delta_phi_c
  MotionalState motion;  // uses nbar and |beta|
  NoiseModel noise;      // frequency-fluctuation model for averaged quantities

  void validate() const;  // throws config-error
};

// Per-spin displacement accumulated between t0 and t1 of one arm, in the lab
// mode, for sigma_z eigenvalue +1 (the -1 branch is the negative).
cd segment_displacement(const BogoliubovFrame& frame, double phi_odf, int n_ions,
                        double t0, double t1);

// Net displacement after the full echo sequence arm(0,tau) minus
// arm(tau + t_pi, 2 tau + t_pi); zero exactly at the decoupling detunings.
cd total_displacement(const BogoliubovFrame& frame, double phi_odf, int n_ions,
                      double tau, double t_pi);

// Geometric phase accumulated by a pair of spins over the echo sequence.
double total_phase(const BogoliubovFrame& frame, int n_ions, double tau, double t_pi);

// Bright fraction at a fixed detuning (no noise averaging):
//   P_up = 1/2 - 1/2 e^{-2 Gamma tau} e^{-2 |alpha_T|^2 (2 nbar + 1)}
//          J0(4 |alpha_T| |beta|) cos(4 Phi_T)^{N-1}.
// Throws unstable-regime when delta <= g.
double bright_fraction_at(const ContinuousConfig& config, double delta_rad_s);

struct BrightResult {
  double value{};
  double rejected_fraction{};
};

// Bright fraction averaged over Gaussian detuning fluctuations; samples that
// land at or beyond the instability (delta + eps <= g) are rejected. Throws
// rejected-fraction above the 1e-3 ceiling.
BrightResult continuous_bright_fraction(const ContinuousConfig& config);

struct Band {
  double lo{};
  double hi{};
};

// Envelope of the bright fraction over the (experimentally undriven) parametric
// phase: min/max over delta_phi_c in [0, 2 pi) on a pi/32 grid.
Band bright_fraction_band(const ContinuousConfig& config);

// Detuning-scan evaluation (noise-averaged per point).
std::vector<BrightResult> decouple_scan(const ContinuousConfig& config,
                                        const std::vector<double>& deltas_rad_s);

// k-th spin-motion decoupling detuning of the echo sequence (rad/s):
//   delta_k = sqrt((2 pi k / tau)^2 + g^2).
double decoupling_frequency(double tau, double g, int k);

// Invert a measured decoupling detuning for the parametric rate:
//   g = sqrt(delta^2 - (2 pi k / tau)^2); domain-error when delta < 2 pi k / tau.
double extract_g(double delta_measured, double tau, int k);

struct DecouplingScanData {
  std::vector<double> delta_rad_s;
  std::vector<double> bright_fraction;

  void validate() const;  // throws config-error on shape mismatch
};

struct DecoupleFitResult {
  double nbar_hat{};
  double beta_hat{};
  double sse{};
  int iterations{};
};

// Joint (nbar, |beta|) estimate from a measured detuning scan. Model settings
// (f, tau, t_pi, gamma, g, N) come from `config`; its motion fields are
// ignored. Coarse grid (nbar log-spaced on [0.1, 300] x |beta| on [0, 30])
// followed by Nelder-Mead at relative tolerance 1e-8.
// Throws fit-failure on flat data or a degenerate optimum.
DecoupleFitResult fit_decoupling_scan(const DecouplingScanData& data,
                                      const ContinuousConfig& config);

struct GCalibrationPoint {
  double voltage_v{};
  double g_rad_s{};
  double tau_s{};
};

struct LinearFitResult {
  double slope{};      // rad/s per volt
  double intercept{};  // rad/s
  double sse{};
};

// Linear calibration of the parametric rate against drive voltage. The
// intercept is constrained to zero unless fit_intercept is set. Throws
// degenerate-design when the design has no voltage variation (or, with a free
// intercept, fewer than two distinct voltages).
LinearFitResult fit_linear_g(const std::vector<GCalibrationPoint>& points,
                             bool fit_intercept = false);

}  // namespace squeezeion
