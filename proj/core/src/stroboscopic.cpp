#include "squeezeion/stroboscopic.hpp"

#include <algorithm>
#include <cmath>

#include "squeezeion/errors.hpp"
#include "squeezeion/math.hpp"
#include "squeezeion/units.hpp"

namespace squeezeion {

void StroboConfig::validate() const {
  require(n_ions >= 1, errc::config_error, "strobo: n_ions must be >= 1");
  require(f >= 0.0, errc::config_error, "strobo: f must be >= 0");
  require(tau > 0.0, errc::config_error, "strobo: tau must be > 0");
  require(gamma >= 0.0, errc::config_error, "strobo: gamma must be >= 0");
  require(r >= 0.0, errc::config_error, "strobo: r must be >= 0");
  require(nbar >= 0.0, errc::config_error, "strobo: nbar must be >= 0");
  require(g >= 0.0 && t_s >= 0.0, errc::config_error,
          "strobo: g and t_s must be >= 0");
  if (g > 0.0 && t_s > 0.0) {
    const double r_pulse = g * t_s;
    require(std::abs(r_pulse - r) <= 1e-9 * std::max(1.0, std::abs(r)),
            errc::config_error,
            "strobo: inconsistent squeezing pulse, r != g * t_s");
  }
}

double chi(double r, double delta_phi) {
  const double c = std::cos(delta_phi);
  return std::exp(2.0 * r) * (1.0 + c) + std::exp(-2.0 * r) * (1.0 - c);
}

double strobo_bright_fraction(const StroboConfig& config, double delta_phi) {
  config.validate();
  const double ft = config.f * config.tau;
  const double quadrature =
      ft * ft / (4.0 * config.n_ions) * (2.0 * config.nbar + 1.0) *
      chi(config.r, delta_phi);
  return 0.5 - 0.5 * std::exp(-config.gamma * config.tau) * std::exp(-quadrature);
}

std::vector<PhaseScanPoint> phase_scan(const StroboConfig& config,
                                       const std::vector<double>& delta_phi_values) {
  std::vector<PhaseScanPoint> out;
  out.reserve(delta_phi_values.size());
  for (double phi : delta_phi_values)
    out.push_back({phi, strobo_bright_fraction(config, phi), 0.0});
  return out;
}

namespace {

double weighted_sse(const std::vector<PhaseScanPoint>& data,
                    const std::vector<double>& weights,
                    const StroboConfig& config, double r) {
  StroboConfig trial = config;
  trial.r = r;
  trial.g = 0.0;  // the scan model does not re-check the pulse consistency
  trial.t_s = 0.0;
  double sse = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double model = strobo_bright_fraction(trial, data[i].delta_phi);
    const double resid = data[i].bright_fraction - model;
    sse += weights[i] * resid * resid;
  }
  return sse;
}

// Grid minimum over r in [0, 3] (step 0.02) followed by quadratic refinement.
double minimize_r(const std::vector<PhaseScanPoint>& data,
                  const std::vector<double>& weights,
                  const StroboConfig& config, double* sse_out) {
  constexpr double r_lo = 0.0, r_hi = 3.0, step = 0.02;
  const int n = static_cast<int>(std::round((r_hi - r_lo) / step)) + 1;
  int best = 0;
  double best_sse = 0.0;
  std::vector<double> sse(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    sse[static_cast<std::size_t>(i)] = weighted_sse(data, weights, config, r_lo + step * i);
    if (i == 0 || sse[static_cast<std::size_t>(i)] < best_sse) {
      best = i;
      best_sse = sse[static_cast<std::size_t>(i)];
    }
  }
  require(best < n - 1, errc::fit_failure,
          "r estimate pinned to the upper search boundary");

  double a, b, c;
  if (best == 0) {  // bracket against the lower boundary
    a = r_lo;
    b = r_lo + 0.5 * step;
    c = r_lo + step;
  } else {
    a = r_lo + step * (best - 1);
    b = r_lo + step * best;
    c = std::min(r_hi, r_lo + step * (best + 1));
  }
  double fa = weighted_sse(data, weights, config, a);
  double fb = weighted_sse(data, weights, config, b);
  double fc = weighted_sse(data, weights, config, c);
  // Successive parabolic refinement with bracket shrinking.
  for (int iter = 0; iter < 80 && c - a > 1e-10; ++iter) {
    double x = parabolic_vertex(a, b, c, fa, fb, fc);
    if (!(x > a && x < c) || x == b) x = 0.5 * (a + c);
    const double fx = weighted_sse(data, weights, config, x);
    if (fx < fb) {
      if (x < b) {
        c = b;
        fc = fb;
      } else {
        a = b;
        fa = fb;
      }
      b = x;
      fb = fx;
    } else {
      if (x < b) {
        a = x;
        fa = fx;
      } else {
        c = x;
        fc = fx;
      }
    }
  }
  if (sse_out) *sse_out = fb;
  require(b < r_hi - 1e-6, errc::fit_failure,
          "r estimate pinned to the upper search boundary");
  return b;
}

}  // namespace

StroboFitResult fit_strobo_r(const std::vector<PhaseScanPoint>& data,
                             const StroboConfig& config,
                             double nbar_uncertainty) {
  config.validate();
  require(nbar_uncertainty >= 0.0, errc::config_error,
          "strobo fit: nbar_uncertainty must be >= 0");
  require(data.size() >= 8, errc::fit_failure,
          "r fit needs at least 8 phase points");
  auto [lo_it, hi_it] = std::minmax_element(
      data.begin(), data.end(),
      [](const PhaseScanPoint& a, const PhaseScanPoint& b) {
        return a.delta_phi < b.delta_phi;
      });
  require(hi_it->delta_phi - lo_it->delta_phi >= two_pi * (1.0 - 1e-9),
          errc::fit_failure, "r fit needs phase coverage of at least one period");

  auto [min_y, max_y] = std::minmax_element(
      data.begin(), data.end(),
      [](const PhaseScanPoint& a, const PhaseScanPoint& b) {
        return a.bright_fraction < b.bright_fraction;
      });
  require(max_y->bright_fraction - min_y->bright_fraction > 1e-9,
          errc::fit_failure, "r fit: scan data carries no phase contrast");

  const bool weighted = std::all_of(
      data.begin(), data.end(),
      [](const PhaseScanPoint& p) { return p.std_dev > 0.0; });
  std::vector<double> weights(data.size(), 1.0);
  if (weighted)
    for (std::size_t i = 0; i < data.size(); ++i)
      weights[i] = 1.0 / (data[i].std_dev * data[i].std_dev);

  StroboFitResult result;
  result.r_hat = minimize_r(data, weights, config, &result.sse);

  // Statistical uncertainty from the local curvature of the weighted SSE:
  // var(r) ~ 2 sigma_res^2 / SSE''(r_hat), with sigma_res^2 estimated from the
  // residuals when the data carry no stated uncertainties.
  const double h = 1e-3;
  const double s0 = weighted_sse(data, weights, config, result.r_hat);
  const double sp = weighted_sse(data, weights, config, result.r_hat + h);
  const double sm = weighted_sse(data, weights, config, std::max(0.0, result.r_hat - h));
  const double curvature = (sp - 2.0 * s0 + sm) / (h * h);
  double stat = 0.0;
  if (curvature > 0.0) {
    const double dof = static_cast<double>(data.size()) - 1.0;
    const double sigma2 = weighted ? 1.0 : s0 / dof;
    stat = std::sqrt(2.0 * sigma2 / curvature);
  }

  StroboConfig shifted = config;
  shifted.nbar = std::max(0.0, config.nbar - nbar_uncertainty);
  result.r_refit_lo = minimize_r(data, weights, shifted, nullptr);
  shifted.nbar = config.nbar + nbar_uncertainty;
  result.r_refit_hi = minimize_r(data, weights, shifted, nullptr);

  const double band = 0.5 * std::abs(result.r_refit_hi - result.r_refit_lo);
  result.r_uncertainty = std::sqrt(band * band + stat * stat);
  return result;
}

cd amplified_displacement(cd beta_in, double r, bool aligned_with_amplified_axis) {
  require(r >= 0.0, errc::domain_error, "amplified_displacement: r must be >= 0");
  return beta_in * std::exp(aligned_with_amplified_axis ? r : -r);
}

}  // namespace squeezeion
