#pragma once

#include <vector>

#include "squeezeion/types.hpp"

namespace squeezeion {

// Single-spin decoherence channels of the light-mediated interaction:
// spontaneous Raman flips (up->down, down->up) and elastic dephasing.
struct DecoherenceRates {
  double gamma_ud{};  // up -> down flip rate, 1/s
  double gamma_du{};  // down -> up flip rate, 1/s
  double gamma_el{};  // elastic dephasing rate, 1/s

  double gamma_r() const { return gamma_ud + gamma_du; }               // total flip rate
  double gamma_total() const { return 0.5 * (gamma_r() + gamma_el); }  // coherence decay
  double gamma_asym() const { return 0.25 * (gamma_ud - gamma_du); }   // flip asymmetry

  void validate() const;  // throws config-error
};

struct PhiPsi {
  cd phi{};  // transverse-coherence propagator factor
  cd psi{};  // coherence-population cross factor
};

// One-spin factors of the dissipative Ising dynamics at coupling J over time t
// for an N-spin ensemble. Principal-branch complex square root; the removable
// sinc singularity is filled. Rate-free limit: phi = cos(2Jt/N),
// psi = i sin(2Jt/N).
PhiPsi phi_psi(double J, double t, const DecoherenceRates& rates, int n_ions);

struct JAlpha {
  double J{};  // effective Ising rate, rad/s
  cd alpha{};  // residual per-pair spin-motion displacement
};

// Effective Ising coupling and residual spin-motion entanglement generated by
// the continuously driven, parametrically squeezed mode after one loop time t
// (delta_phi_c = 0 convention, f' real):
//   J = (f'^2 / delta') (1 - sinc(delta' t)),
//   alpha = (1/sqrt N)(f'/delta') { [cos(delta' t) - 1] e^{r} - i sin(delta' t) e^{-r} }.
JAlpha effective_J_alpha(const BogoliubovFrame& frame, double t, int n_ions);

// Two-site permutation-symmetric correlators of the dissipative Ising model,
// with the residual spin-motion displacement folded in as dephasing of weight
// kappa = |alpha|^2 (2 nbar + 1).
struct Correlators {
  cd sp{};   // <sigma^+>
  cd spp{};  // <sigma^+_i sigma^+_j>, i != j
  cd spm{};  // <sigma^+_i sigma^-_j>, i != j
  cd spz{};  // <sigma^+_i sigma^z_j>, i != j
  double m{};    // <sigma^z>
  double mzz{};  // <sigma^z_i sigma^z_j>, i != j
};

Correlators spin_correlators(int n_ions, double J, cd alpha, double nbar,
                             double t, const DecoherenceRates& rates);

// First and second moments of the collective spin assembled from the
// permutation-symmetric correlators.
struct SpinMoments {
  double sx{}, sy{}, sz{};
  double var_sy{}, var_sz{}, cov_yz{};
};

SpinMoments collective_moments(const Correlators& c, int n_ions);

struct RamseyXi2 {
  double xi2{};      // Ramsey squeezing parameter (variance ratio)
  double psi_opt{};  // optimal quadrature angle in the y-z plane, rad
};

// xi^2 = N min_psi var(S_psi) / |<S>|^2 minimized in closed form over the
// y-z quadrature plane. Throws degenerate-contrast when |<S>| underflows.
RamseyXi2 ramsey_xi2(const SpinMoments& moments, int n_ions);

// Full evaluation settings for a squeezing run/scan.
struct SqueezeRunParams {
  int n_ions{2};
  double f{};      // ODF coupling rate, rad/s
  double g{};      // parametric rate, rad/s
  double delta{};  // explicit detuning, rad/s (used when single_loop is false)
  DecoherenceRates rates;
  double nbar{};
  NoiseModel noise;
  bool single_loop{true};       // tie delta to tau: delta = sqrt((2 pi/tau)^2 + g^2)
  bool average_moments{false};  // average moments over noise draws instead of xi^2

  void validate() const;  // throws config-error
};

// Detuning that closes one motional loop in time tau at parametric rate g.
double single_loop_detuning(double tau, double g);

// Mean-field Ising rate f^2/(2 delta) used as a decoherence reference scale.
double ising_rate_reference(double f, double delta);

// Squeezing parameter at interrogation time tau for one detuning offset
// epsilon (rad/s). Throws unstable-regime when delta + epsilon <= g.
RamseyXi2 xi2_at(const SqueezeRunParams& params, double tau, double epsilon);

struct Xi2Averaged {
  double xi2{};
  double psi_opt{};  // quadrature angle of the zero-offset evaluation
  double rejected_fraction{};
};

// Noise-averaged squeezing parameter at fixed tau over pre-drawn offsets;
// unstable or contrast-degenerate draws are rejected. Throws domain-error when
// every draw is rejected.
Xi2Averaged xi2_averaged(const SqueezeRunParams& params, double tau,
                         const std::vector<double>& offsets);

struct SqueezePoint {
  double tau_s{};
  double xi2{};
  double xi_db{};  // 10 log10(xi2); negative when squeezed
  double psi_opt{};
  double rejected_fraction{};
  bool valid{};
};

struct SqueezeScanResult {
  std::vector<SqueezePoint> points;
  bool has_optimum{};
  double tau_opt{};
  double xi2_opt{};
  double squeezing_db_opt{};  // -10 log10(xi2_opt)
};

// Default interrogation-time grid: 200 points/decade, log-spaced over
// [10 us, 10 ms].
std::vector<double> default_tau_grid();

// Evaluate the noise-averaged squeezing parameter over a tau grid and locate
// the optimum among points whose rejected fraction stays below the ceiling.
// Offsets are drawn once per scan (the fluctuation is static per experiment).
SqueezeScanResult squeezing_scan(const SqueezeRunParams& params,
                                 const std::vector<double>& taus);

}  // namespace squeezeion
