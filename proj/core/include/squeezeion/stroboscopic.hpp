#pragma once

#include <optional>
#include <vector>

#include "squeezeion/types.hpp"

namespace squeezeion {

// One stroboscopic phase-scan experiment: squeeze the mode, apply the
// spin-dependent force for tau inside a Ramsey pair, read out the bright
// fraction as a function of the relative phase delta_phi between the squeeze
// axis and the force axis.
struct StroboConfig {
  int n_ions{1};
  double f{};        // ODF coupling rate, rad/s
  double tau{};      // arm time, s
  double gamma{};    // single-spin decoherence rate, 1/s
  double r{};        // motional squeezing parameter
  double nbar{};     // initial thermal occupation
  double theta{};    // squeeze-axis angle, rad
  double g{};        // parametric rate (rad/s); optional, only for consistency
  double t_s{};      // squeezing-pulse duration, s; optional

  // Throws config-error; when both g and t_s are set, enforces r = g * t_s.
  void validate() const;
};

// Phase-quadrature weight chi(r, delta_phi) =
//   e^{2r} (1 + cos delta_phi) + e^{-2r} (1 - cos delta_phi).
double chi(double r, double delta_phi);

// Ramsey bright fraction with a squeezed mode:
//   P_up = 1/2 - 1/2 e^{-Gamma tau}
//          exp[-(|f tau|^2 / 4N) (2 nbar + 1) chi(r, delta_phi)].
double strobo_bright_fraction(const StroboConfig& config, double delta_phi);

struct PhaseScanPoint {
  double delta_phi{};
  double bright_fraction{};
  double std_dev{};  // optional per-point uncertainty; 0 = unweighted
};

// Evaluate the model on a phase grid.
std::vector<PhaseScanPoint> phase_scan(const StroboConfig& config,
                                       const std::vector<double>& delta_phi_values);

struct StroboFitResult {
  double r_hat{};
  double r_uncertainty{};  // refit band (+) statistical curvature, in quadrature
  double r_refit_lo{};     // r_hat when nbar shifts by -nbar_uncertainty
  double r_refit_hi{};     // r_hat when nbar shifts by +nbar_uncertainty
  double sse{};            // weighted residual sum at the optimum
};

// Least-squares estimate of r from a measured phase scan. All other model
// parameters are taken from `config` (its r field is ignored). Inverse-variance
// weights when every point carries std_dev > 0, uniform weights otherwise.
// Search: r grid [0, 3] step 0.02, then local quadratic refinement.
// Throws fit-failure on uninformative (flat) data, on fewer than 8 points or
// less than one period of phase coverage, and when the optimum pins to the
// upper search boundary. nbar_uncertainty propagates through refits at
// nbar -/+ nbar_uncertainty.
StroboFitResult fit_strobo_r(const std::vector<PhaseScanPoint>& data,
                             const StroboConfig& config,
                             double nbar_uncertainty);

// Amplitude of a coherent displacement after the squeezing pulse:
// e^{+r} beta when the displacement lies along the amplified quadrature,
// e^{-r} beta when it lies along the deamplified one.
cd amplified_displacement(cd beta_in, double r, bool aligned_with_amplified_axis);

}  // namespace squeezeion
