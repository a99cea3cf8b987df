#include "squeezeion/continuous.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "squeezeion/core_model.hpp"
#include "squeezeion/errors.hpp"
#include "squeezeion/math.hpp"
#include "squeezeion/units.hpp"

namespace squeezeion {

void ContinuousConfig::validate() const {
  require(n_ions >= 1, errc::config_error, "continuous: n_ions must be >= 1");
  drive.validate();
  motion.validate();
  noise.validate();
}

cd segment_displacement(const BogoliubovFrame& frame, double phi_odf, int n_ions,
                        double t0, double t1) {
  require(n_ions >= 1, errc::domain_error, "segment_displacement: n_ions >= 1");
  require(t1 >= t0 && t0 >= 0.0, errc::domain_error,
          "segment_displacement: needs 0 <= t0 <= t1");
  const double dp = frame.delta_prime;
  // Frame-mode displacement of the driven-oscillator loop between t0 and t1.
  const cd alpha_frame =
      frame.f_prime / dp *
      (std::exp(cd(0.0, -dp * t1)) - std::exp(cd(0.0, -dp * t0)));
  // Map back to the lab mode through the Bogoliubov transformation.
  const cd mapped = alpha_frame * std::cosh(frame.r) +
                    std::exp(cd(0.0, frame.delta_phi_c)) *
                        std::conj(alpha_frame) * std::sinh(frame.r);
  return std::exp(cd(0.0, phi_odf)) / (2.0 * std::sqrt(static_cast<double>(n_ions))) *
         mapped;
}

cd total_displacement(const BogoliubovFrame& frame, double phi_odf, int n_ions,
                      double tau, double t_pi) {
  require(tau > 0.0 && t_pi >= 0.0, errc::domain_error,
          "total_displacement: needs tau > 0 and t_pi >= 0");
  return segment_displacement(frame, phi_odf, n_ions, 0.0, tau) -
         segment_displacement(frame, phi_odf, n_ions, tau + t_pi, 2.0 * tau + t_pi);
}

double total_phase(const BogoliubovFrame& frame, int n_ions, double tau, double t_pi) {
  require(n_ions >= 1, errc::domain_error, "total_phase: n_ions >= 1");
  require(tau > 0.0 && t_pi >= 0.0, errc::domain_error,
          "total_phase: needs tau > 0 and t_pi >= 0");
  const double dp = frame.delta_prime;
  const double fp2 = std::norm(frame.f_prime);
  const double x = dp * tau;
  return fp2 / (2.0 * dp * dp * static_cast<double>(n_ions)) *
         (std::sin(x) - x + (1.0 - std::cos(x)) * std::sin(dp * (tau + t_pi)));
}

namespace {

double bright_from_frame(const ContinuousConfig& config, const BogoliubovFrame& frame) {
  const auto& d = config.drive;
  const cd alpha_t = total_displacement(frame, d.phi_odf, config.n_ions, d.tau, d.t_pi);
  const double phi_t = total_phase(frame, config.n_ions, d.tau, d.t_pi);
  const double a = std::abs(alpha_t);
  const double contrast =
      std::exp(-2.0 * d.gamma * d.tau) *
      std::exp(-2.0 * a * a * (2.0 * config.motion.nbar + 1.0)) *
      bessel_j0(4.0 * a * std::abs(config.motion.beta)) *
      powi(std::cos(4.0 * phi_t), config.n_ions - 1);
  return 0.5 - 0.5 * contrast;
}

}  // namespace

double bright_fraction_at(const ContinuousConfig& config, double delta_rad_s) {
  config.validate();
  const BogoliubovFrame frame = bogoliubov_frame(
      delta_rad_s, config.drive.g, config.drive.f, config.drive.delta_phi_c);
  return bright_from_frame(config, frame);
}

BrightResult continuous_bright_fraction(const ContinuousConfig& config) {
  config.validate();
  if (config.noise.sigma_hz == 0.0) {
    // Exact evaluation at the configured detuning: there are no draws to
    // reject, so instability surfaces as the frame's own error.
    const BogoliubovFrame frame =
        bogoliubov_frame(config.drive.delta, config.drive.g, config.drive.f,
                         config.drive.delta_phi_c);
    return BrightResult{bright_from_frame(config, frame), 0.0};
  }
  const auto sample = [&](double eps) -> std::optional<double> {
    const double delta_eff = config.drive.delta + eps;
    if (delta_eff <= config.drive.g) return std::nullopt;  // unstable sample
    const BogoliubovFrame frame = bogoliubov_frame(
        delta_eff, config.drive.g, config.drive.f, config.drive.delta_phi_c);
    return bright_from_frame(config, frame);
  };
  const AverageResult avg = gaussian_average(sample, config.noise);
  require(avg.rejected_fraction <= rejected_fraction_ceiling, errc::rejected_fraction,
          "too many detuning samples rejected as unstable");
  return BrightResult{avg.mean, avg.rejected_fraction};
}

Band bright_fraction_band(const ContinuousConfig& config) {
  config.validate();
  Band band{1.0, 0.0};
  ContinuousConfig scan = config;
  constexpr int n_phases = 64;  // pi/32 steps over [0, 2 pi)
  for (int i = 0; i < n_phases; ++i) {
    scan.drive.delta_phi_c = two_pi * static_cast<double>(i) / n_phases;
    const double value = continuous_bright_fraction(scan).value;
    band.lo = std::min(band.lo, value);
    band.hi = std::max(band.hi, value);
  }
  return band;
}

std::vector<BrightResult> decouple_scan(const ContinuousConfig& config,
                                        const std::vector<double>& deltas_rad_s) {
  config.validate();
  std::vector<BrightResult> out(deltas_rad_s.size());
  parallel_for(deltas_rad_s.size(), [&](std::size_t i) {
    ContinuousConfig point = config;
    point.drive.delta = deltas_rad_s[i];
    out[i] = continuous_bright_fraction(point);
  });
  return out;
}

double decoupling_frequency(double tau, double g, int k) {
  require(tau > 0.0, errc::domain_error, "decoupling_frequency: tau must be > 0");
  require(g >= 0.0, errc::domain_error, "decoupling_frequency: g must be >= 0");
  require(k >= 1, errc::domain_error, "decoupling_frequency: k must be >= 1");
  const double loop = two_pi * static_cast<double>(k) / tau;
  return std::sqrt(loop * loop + g * g);
}

double extract_g(double delta_measured, double tau, int k) {
  require(tau > 0.0, errc::domain_error, "extract_g: tau must be > 0");
  require(k >= 1, errc::domain_error, "extract_g: k must be >= 1");
  const double loop = two_pi * static_cast<double>(k) / tau;
  require(delta_measured >= loop, errc::domain_error,
          "extract_g: measured detuning below the bare decoupling frequency");
  return std::sqrt((delta_measured - loop) * (delta_measured + loop));
}

void DecouplingScanData::validate() const {
  require(delta_rad_s.size() == bright_fraction.size(), errc::config_error,
          "decoupling scan data: column length mismatch");
  require(!delta_rad_s.empty(), errc::config_error,
          "decoupling scan data: empty scan");
}

DecoupleFitResult fit_decoupling_scan(const DecouplingScanData& data,
                                      const ContinuousConfig& config) {
  data.validate();
  config.validate();
  require(data.delta_rad_s.size() >= 5, errc::fit_failure,
          "decoupling fit needs at least 5 scan points");
  const auto [ymin, ymax] =
      std::minmax_element(data.bright_fraction.begin(), data.bright_fraction.end());
  require(*ymax - *ymin > 1e-9, errc::fit_failure,
          "decoupling fit: scan data carries no contrast");

  // Noise-free model: the fit explains the measured points, not the noise draw.
  ContinuousConfig model = config;
  model.noise.sigma_hz = 0.0;
  model.noise.n_samples = 1;

  const auto sse_at = [&](double nbar, double beta) {
    ContinuousConfig trial = model;
    trial.motion.nbar = nbar;
    trial.motion.beta = cd(beta, 0.0);
    double sse = 0.0;
    for (std::size_t i = 0; i < data.delta_rad_s.size(); ++i) {
      const double p = bright_fraction_at(trial, data.delta_rad_s[i]);
      const double resid = data.bright_fraction[i] - p;
      sse += resid * resid;
    }
    return sse;
  };

  // Coarse grid: nbar log-spaced, |beta| linear.
  const std::vector<double> nbar_grid = log_grid(0.1, 300.0, 24);
  double best_nbar = nbar_grid.front(), best_beta = 0.0;
  double best_sse = std::numeric_limits<double>::infinity();
  for (double nbar : nbar_grid) {
    for (int ib = 0; ib <= 30; ++ib) {
      const double beta = static_cast<double>(ib);
      const double sse = sse_at(nbar, beta);
      if (sse < best_sse) {
        best_sse = sse;
        best_nbar = nbar;
        best_beta = beta;
      }
    }
  }

  // Refine in (log nbar, beta); log keeps nbar positive without constraints.
  Eigen::VectorXd start(2), step(2);
  start << std::log(best_nbar), best_beta;
  step << 0.3, 0.5;
  const auto objective = [&](const Eigen::VectorXd& x) {
    return sse_at(std::exp(x(0)), std::abs(x(1)));
  };
  const NelderMeadResult nm = nelder_mead(objective, start, step, 1e-8, 4000);
  require(nm.converged, errc::fit_failure, "decoupling fit did not converge");

  DecoupleFitResult result;
  result.nbar_hat = std::exp(nm.x(0));
  result.beta_hat = std::abs(nm.x(1));
  result.sse = nm.fmin;
  result.iterations = nm.iterations;
  require(result.nbar_hat > 1e-4 && result.nbar_hat < 1e4 && result.beta_hat < 100.0,
          errc::fit_failure, "decoupling fit ran to an unphysical optimum");
  return result;
}

LinearFitResult fit_linear_g(const std::vector<GCalibrationPoint>& points,
                             bool fit_intercept) {
  require(!points.empty(), errc::config_error, "calibration fit: no data");
  double sv = 0.0, svv = 0.0, sg = 0.0, svg = 0.0;
  const double n = static_cast<double>(points.size());
  for (const auto& p : points) {
    sv += p.voltage_v;
    svv += p.voltage_v * p.voltage_v;
    sg += p.g_rad_s;
    svg += p.voltage_v * p.g_rad_s;
  }
  LinearFitResult result;
  if (fit_intercept) {
    require(points.size() >= 2, errc::degenerate_design,
            "calibration fit with intercept needs at least 2 points");
    const double det = n * svv - sv * sv;
    require(std::abs(det) > 1e-12 * std::max(1.0, n * svv), errc::degenerate_design,
            "calibration fit: all drive voltages are equal");
    result.slope = (n * svg - sv * sg) / det;
    result.intercept = (sg * svv - sv * svg) / det;
  } else {
    require(svv > 0.0, errc::degenerate_design,
            "calibration fit: zero drive voltage throughout");
    result.slope = svg / svv;
    result.intercept = 0.0;
  }
  for (const auto& p : points) {
    const double resid = p.g_rad_s - (result.slope * p.voltage_v + result.intercept);
    result.sse += resid * resid;
  }
  return result;
}

}  // namespace squeezeion
