#include "squeezeion/sensing.hpp"

#include <cmath>

#include "squeezeion/errors.hpp"
#include "squeezeion/math.hpp"

namespace squeezeion {

void SensitivityParams::validate() const {
  require(f > 0.0, errc::config_error, "sensitivity: f must be > 0");
  require(g >= 0.0, errc::config_error, "sensitivity: g must be >= 0");
  require(sigma >= 0.0, errc::config_error, "sensitivity: sigma must be >= 0");
  require(gamma >= 0.0, errc::config_error, "sensitivity: gamma must be >= 0");
  require(nbar >= 0.0, errc::config_error, "sensitivity: nbar must be >= 0");
  require(r >= 0.0, errc::config_error, "sensitivity: r must be >= 0");
  require(sql_var > 0.0, errc::config_error, "sensitivity: sql_var must be > 0");
  if (sigma > 0.0 && r > 0.0)
    require(g > 0.0, errc::domain_error,
            "sensitivity: frequency noise with amplification requires g > 0 "
            "(noise enters through the pulse duration r/g)");
}

double displacement_variance(const SensitivityParams& params, double tau) {
  params.validate();
  require(tau > 0.0, errc::domain_error, "sensitivity: tau must be > 0");
  const double s2 = params.sigma * params.sigma;
  const double e2r = std::exp(2.0 * params.r);
  const double f2t2 = params.f * params.f * tau * tau;

  // Spin-dephasing bracket: the three noise terms vanish identically at
  // sigma = 0; they are skipped there so g = 0 stays well-defined.
  double bracket = 1.0;
  if (params.sigma > 0.0) {
    bracket += s2 * tau * tau / 3.0;
    if (params.r > 0.0) {
      const double em2r = std::exp(-2.0 * params.r);
      bracket += s2 / (params.g * params.g) *
                 (params.r - 0.5 * (1.0 - em2r));
      bracket += s2 * tau / params.g * 0.5 * (1.0 - em2r);
    }
  }
  const double projection = std::exp(2.0 * params.gamma * tau) /
                            (4.0 * f2t2 * e2r) * bracket;

  double heating = 0.0;
  double phase_walk = 0.0;
  if (params.sigma > 0.0) {
    double lever = 1.0;
    if (params.r > 0.0)
      lever += std::sinh(params.r) * std::exp(params.r) / (params.g * tau);
    heating = s2 * tau * tau / (2.0 * e2r) * lever * lever * (params.nbar + 0.5);
    phase_walk = params.f * params.f * s2 * tau * tau * tau * tau / (9.0 * e2r);
  }
  return projection + heating + phase_walk;
}

double displacement_variance_r0(const SensitivityParams& params, double tau) {
  params.validate();
  require(tau > 0.0, errc::domain_error, "sensitivity: tau must be > 0");
  const double s2 = params.sigma * params.sigma;
  const double f2t2 = params.f * params.f * tau * tau;
  return std::exp(2.0 * params.gamma * tau) / (4.0 * f2t2) *
             (1.0 + s2 * tau * tau / 3.0) +
         s2 * tau * tau / 2.0 * (params.nbar + 0.5) +
         params.f * params.f * s2 * tau * tau * tau * tau / 9.0;
}

SensitivityScan sensitivity_scan(const SensitivityParams& params,
                                 const std::vector<double>& taus) {
  require(taus.size() >= 3, errc::domain_error,
          "sensitivity scan needs at least 3 tau points");
  SensitivityScan scan;
  scan.points.reserve(taus.size());
  std::size_t imin_r = 0, imin_r0 = 0;
  for (std::size_t i = 0; i < taus.size(); ++i) {
    SensitivityPoint p;
    p.tau_s = taus[i];
    p.var_r = displacement_variance(params, taus[i]);
    p.var_r0 = displacement_variance_r0(params, taus[i]);
    p.gain_db = 10.0 * std::log10(p.var_r0 / p.var_r);
    p.db_below_sql = 10.0 * std::log10(params.sql_var / p.var_r);
    scan.points.push_back(p);
    if (p.var_r < scan.points[imin_r].var_r) imin_r = i;
    if (p.var_r0 < scan.points[imin_r0].var_r0) imin_r0 = i;
  }

  auto refine = [&](std::size_t imin, bool amplified, double* tau_opt, double* var_min) {
    auto eval = [&](double t) {
      return amplified ? displacement_variance(params, t)
                       : displacement_variance_r0(params, t);
    };
    double t = taus[imin];
    double v = amplified ? scan.points[imin].var_r : scan.points[imin].var_r0;
    if (imin > 0 && imin + 1 < taus.size()) {
      // Refine on log(tau): the scan grids are logarithmic.
      const double x0 = std::log(taus[imin - 1]);
      const double x1 = std::log(taus[imin]);
      const double x2 = std::log(taus[imin + 1]);
      const double y0 = amplified ? scan.points[imin - 1].var_r : scan.points[imin - 1].var_r0;
      const double y2 = amplified ? scan.points[imin + 1].var_r : scan.points[imin + 1].var_r0;
      const double tr = std::exp(parabolic_vertex(x0, x1, x2, y0, v, y2));
      const double vr = eval(tr);
      if (vr < v) {
        t = tr;
        v = vr;
      }
    }
    *tau_opt = t;
    *var_min = v;
  };
  refine(imin_r, true, &scan.tau_opt_r, &scan.var_min_r);
  refine(imin_r0, false, &scan.tau_opt_r0, &scan.var_min_r0);
  scan.gain_optimal_db = 10.0 * std::log10(scan.var_min_r0 / scan.var_min_r);
  return scan;
}

}  // namespace squeezeion
