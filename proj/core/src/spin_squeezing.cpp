#include "squeezeion/spin_squeezing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "squeezeion/core_model.hpp"
#include "squeezeion/errors.hpp"
#include "squeezeion/math.hpp"
#include "squeezeion/units.hpp"

namespace squeezeion {

void DecoherenceRates::validate() const {
  require(gamma_ud >= 0.0 && gamma_du >= 0.0 && gamma_el >= 0.0,
          errc::config_error, "decoherence rates must be >= 0");
}

PhiPsi phi_psi(double J, double t, const DecoherenceRates& rates, int n_ions) {
  rates.validate();
  require(n_ions >= 1, errc::domain_error, "phi_psi: n_ions must be >= 1");
  require(t >= 0.0, errc::domain_error, "phi_psi: t must be >= 0");
  const double gr = rates.gamma_r();
  const double gasym = rates.gamma_asym();
  const cd core = cd(2.0 * J / n_ions, 2.0 * gasym);  // 2J/N + 2 i gamma
  const cd s = std::sqrt(core * core - cd(rates.gamma_ud * rates.gamma_du, 0.0));
  const cd arg = t * s;
  const double envelope = std::exp(-0.5 * gr * t);
  PhiPsi out;
  out.phi = envelope * (std::cos(arg) + t * (0.5 * gr) * sinc(arg));
  out.psi = envelope * t * (cd(0.0, 1.0) * core - cd(2.0 * gasym, 0.0)) * sinc(arg);
  return out;
}

JAlpha effective_J_alpha(const BogoliubovFrame& frame, double t, int n_ions) {
  require(n_ions >= 1, errc::domain_error, "effective_J_alpha: n_ions must be >= 1");
  require(t >= 0.0, errc::domain_error, "effective_J_alpha: t must be >= 0");
  const double fp = std::abs(frame.f_prime);
  const double dp = frame.delta_prime;
  const double x = dp * t;
  JAlpha out;
  out.J = fp * fp / dp * (1.0 - sinc(x));
  out.alpha = fp / (dp * std::sqrt(static_cast<double>(n_ions))) *
              cd((std::cos(x) - 1.0) * std::exp(frame.r),
                 -std::sin(x) * std::exp(-frame.r));
  return out;
}

Correlators spin_correlators(int n_ions, double J, cd alpha, double nbar,
                             double t, const DecoherenceRates& rates) {
  require(n_ions >= 2, errc::domain_error, "spin_correlators: n_ions must be >= 2");
  require(nbar >= 0.0, errc::domain_error, "spin_correlators: nbar must be >= 0");
  const double gamma = rates.gamma_total();
  const double kappa = std::norm(alpha) * (2.0 * nbar + 1.0);
  const long long n1 = n_ions - 1, n2 = n_ions - 2;

  const PhiPsi at_j = phi_psi(J, t, rates, n_ions);
  const PhiPsi at_2j = phi_psi(2.0 * J, t, rates, n_ions);
  const PhiPsi at_0 = phi_psi(0.0, t, rates, n_ions);

  Correlators c;
  c.sp = 0.5 * std::exp(-gamma * t) * cpowi(at_j.phi, n1) * std::exp(-2.0 * kappa);
  c.spp = 0.25 * std::exp(-2.0 * gamma * t) * cpowi(at_2j.phi, n2) *
          std::exp(-8.0 * kappa);
  c.spm = 0.25 * std::exp(-2.0 * gamma * t) * cpowi(at_0.phi, n2);
  c.spz = 0.5 * std::exp(-gamma * t) * at_j.psi * cpowi(at_j.phi, n2) *
          std::exp(-2.0 * kappa);
  const double gr = rates.gamma_r();
  c.m = gr > 0.0 ? (rates.gamma_du - rates.gamma_ud) / gr * (1.0 - std::exp(-gr * t))
                 : 0.0;
  c.mzz = c.m * c.m;
  return c;
}

SpinMoments collective_moments(const Correlators& c, int n_ions) {
  require(n_ions >= 2, errc::domain_error, "collective_moments: n_ions must be >= 2");
  const double n = static_cast<double>(n_ions);
  const double pairs = n * (n - 1.0);
  SpinMoments mom;
  mom.sx = n * c.sp.real();
  mom.sy = n * c.sp.imag();
  mom.sz = 0.5 * n * c.m;
  mom.var_sy = 0.25 * n +
               0.25 * pairs * (2.0 * c.spm.real() - 2.0 * c.spp.real()) -
               mom.sy * mom.sy;
  mom.var_sz = 0.25 * n + 0.25 * pairs * c.mzz - mom.sz * mom.sz;
  mom.cov_yz = 0.5 * pairs * c.spz.imag() - mom.sy * mom.sz;
  return mom;
}

RamseyXi2 ramsey_xi2(const SpinMoments& mom, int n_ions) {
  require(n_ions >= 2, errc::domain_error, "ramsey_xi2: n_ions must be >= 2");
  const double s2 = mom.sx * mom.sx + mom.sy * mom.sy + mom.sz * mom.sz;
  require(s2 > 0.0 && std::isfinite(s2), errc::degenerate_contrast,
          "mean spin length underflowed; squeezing parameter undefined");
  const double diff = mom.var_sy - mom.var_sz;
  const double off = 2.0 * mom.cov_yz;
  const double min_var =
      0.5 * (mom.var_sy + mom.var_sz - std::sqrt(diff * diff + off * off));
  RamseyXi2 out;
  out.xi2 = static_cast<double>(n_ions) * min_var / s2;
  out.psi_opt = 0.5 * std::atan2(off, diff);
  return out;
}

void SqueezeRunParams::validate() const {
  require(n_ions >= 2, errc::config_error, "squeeze: n_ions must be >= 2");
  require(f >= 0.0, errc::config_error, "squeeze: f must be >= 0");
  require(g >= 0.0, errc::config_error, "squeeze: g must be >= 0");
  require(nbar >= 0.0, errc::config_error, "squeeze: nbar must be >= 0");
  if (!single_loop)
    require(delta > 0.0, errc::config_error,
            "squeeze: explicit delta must be > 0 when single_loop is off");
  rates.validate();
  noise.validate();
}

double single_loop_detuning(double tau, double g) {
  require(tau > 0.0, errc::domain_error, "single_loop_detuning: tau must be > 0");
  require(g >= 0.0, errc::domain_error, "single_loop_detuning: g must be >= 0");
  const double loop = two_pi / tau;
  return std::sqrt(loop * loop + g * g);
}

double ising_rate_reference(double f, double delta) {
  require(delta > 0.0, errc::domain_error, "ising_rate_reference: delta must be > 0");
  return f * f / (2.0 * delta);
}

namespace {

RamseyXi2 xi2_from_frame(const SqueezeRunParams& params, double tau,
                         const BogoliubovFrame& frame) {
  const JAlpha ja = effective_J_alpha(frame, tau, params.n_ions);
  const Correlators c = spin_correlators(params.n_ions, ja.J, ja.alpha,
                                         params.nbar, tau, params.rates);
  return ramsey_xi2(collective_moments(c, params.n_ions), params.n_ions);
}

}  // namespace

RamseyXi2 xi2_at(const SqueezeRunParams& params, double tau, double epsilon) {
  params.validate();
  require(tau > 0.0, errc::domain_error, "xi2_at: tau must be > 0");
  const double delta =
      (params.single_loop ? single_loop_detuning(tau, params.g) : params.delta) +
      epsilon;
  const BogoliubovFrame frame = bogoliubov_frame(delta, params.g, params.f, 0.0);
  return xi2_from_frame(params, tau, frame);
}

Xi2Averaged xi2_averaged(const SqueezeRunParams& params, double tau,
                         const std::vector<double>& offsets) {
  params.validate();
  require(tau > 0.0, errc::domain_error, "xi2_averaged: tau must be > 0");
  const double delta0 =
      params.single_loop ? single_loop_detuning(tau, params.g) : params.delta;

  auto sample = [&](double eps) -> std::optional<RamseyXi2> {
    const double delta = delta0 + eps;
    if (delta <= params.g) return std::nullopt;
    const BogoliubovFrame frame = bogoliubov_frame(delta, params.g, params.f, 0.0);
    try {
      return xi2_from_frame(params, tau, frame);
    } catch (const error& e) {
      if (e.code() == errc::degenerate_contrast) return std::nullopt;
      throw;
    }
  };

  Xi2Averaged out;
  if (offsets.empty()) {  // sigma = 0: single noise-free evaluation
    // No draws to reject: instability and contrast collapse surface as their
    // own errors rather than as rejected samples.
    const BogoliubovFrame frame = bogoliubov_frame(delta0, params.g, params.f, 0.0);
    const RamseyXi2 xi = xi2_from_frame(params, tau, frame);
    out.xi2 = xi.xi2;
    out.psi_opt = xi.psi_opt;
    out.rejected_fraction = 0.0;
    return out;
  }

  if (params.average_moments) {
    // Average the spin moments over draws, then form xi^2 once.
    SpinMoments acc{};
    std::size_t n_valid = 0;
    for (double eps : offsets) {
      const double delta = delta0 + eps;
      if (delta <= params.g) continue;
      const BogoliubovFrame frame = bogoliubov_frame(delta, params.g, params.f, 0.0);
      const JAlpha ja = effective_J_alpha(frame, tau, params.n_ions);
      const Correlators c = spin_correlators(params.n_ions, ja.J, ja.alpha,
                                             params.nbar, tau, params.rates);
      const SpinMoments mom = collective_moments(c, params.n_ions);
      acc.sx += mom.sx;
      acc.sy += mom.sy;
      acc.sz += mom.sz;
      acc.var_sy += mom.var_sy;
      acc.var_sz += mom.var_sz;
      acc.cov_yz += mom.cov_yz;
      ++n_valid;
    }
    require(n_valid > 0, errc::domain_error,
            "every detuning draw was rejected during moment averaging");
    const double inv = 1.0 / static_cast<double>(n_valid);
    acc.sx *= inv;
    acc.sy *= inv;
    acc.sz *= inv;
    acc.var_sy *= inv;
    acc.var_sz *= inv;
    acc.cov_yz *= inv;
    const RamseyXi2 xi = ramsey_xi2(acc, params.n_ions);
    out.xi2 = xi.xi2;
    out.psi_opt = xi.psi_opt;
    out.rejected_fraction =
        1.0 - static_cast<double>(n_valid) / static_cast<double>(offsets.size());
    return out;
  }

  double sum = 0.0;
  std::size_t n_valid = 0;
  for (double eps : offsets) {  // sequential: thread-count independent
    if (const auto value = sample(eps)) {
      sum += value->xi2;
      ++n_valid;
    }
  }
  require(n_valid > 0, errc::domain_error,
          "every detuning draw was rejected during squeezing averaging");
  out.xi2 = sum / static_cast<double>(n_valid);
  out.rejected_fraction =
      1.0 - static_cast<double>(n_valid) / static_cast<double>(offsets.size());
  const auto central = sample(0.0);
  out.psi_opt = central ? central->psi_opt : 0.0;
  return out;
}

std::vector<double> default_tau_grid() {
  return log_grid(1e-5, 1e-2, 601);  // 200 points per decade over 3 decades
}

SqueezeScanResult squeezing_scan(const SqueezeRunParams& params,
                                 const std::vector<double>& taus) {
  params.validate();
  require(taus.size() >= 3, errc::domain_error,
          "squeezing scan needs at least 3 tau points");
  const std::vector<double> offsets = gaussian_offsets(params.noise);

  SqueezeScanResult scan;
  scan.points.resize(taus.size());
  parallel_for(taus.size(), [&](std::size_t i) {
    SqueezePoint p;
    p.tau_s = taus[i];
    try {
      const Xi2Averaged value = xi2_averaged(params, taus[i], offsets);
      p.xi2 = value.xi2;
      p.xi_db = 10.0 * std::log10(value.xi2);
      p.psi_opt = value.psi_opt;
      p.rejected_fraction = value.rejected_fraction;
      p.valid = value.rejected_fraction <= rejected_fraction_ceiling &&
                std::isfinite(value.xi2);
    } catch (const error& e) {
      if (e.code() != errc::domain_error && e.code() != errc::degenerate_contrast &&
          e.code() != errc::unstable_regime)
        throw;
      p.xi2 = std::numeric_limits<double>::quiet_NaN();
      p.xi_db = std::numeric_limits<double>::quiet_NaN();
      p.psi_opt = std::numeric_limits<double>::quiet_NaN();
      p.rejected_fraction = 1.0;
      p.valid = false;
    }
    scan.points[i] = p;
  });

  std::size_t imin = taus.size();
  for (std::size_t i = 0; i < scan.points.size(); ++i) {
    if (!scan.points[i].valid) continue;
    if (imin == taus.size() || scan.points[i].xi2 < scan.points[imin].xi2) imin = i;
  }
  require(imin < taus.size(), errc::rejected_fraction,
          "no tau point survived the rejected-fraction ceiling");

  scan.has_optimum = true;
  scan.tau_opt = scan.points[imin].tau_s;
  scan.xi2_opt = scan.points[imin].xi2;
  if (imin > 0 && imin + 1 < scan.points.size() && scan.points[imin - 1].valid &&
      scan.points[imin + 1].valid) {
    const double tr = std::exp(parabolic_vertex(
        std::log(scan.points[imin - 1].tau_s), std::log(scan.points[imin].tau_s),
        std::log(scan.points[imin + 1].tau_s), scan.points[imin - 1].xi2,
        scan.points[imin].xi2, scan.points[imin + 1].xi2));
    try {
      const Xi2Averaged refined = xi2_averaged(params, tr, offsets);
      if (refined.rejected_fraction <= rejected_fraction_ceiling &&
          refined.xi2 < scan.xi2_opt) {
        scan.tau_opt = tr;
        scan.xi2_opt = refined.xi2;
      }
    } catch (const error&) {
      // keep the grid optimum
    }
  }
  scan.squeezing_db_opt = -10.0 * std::log10(scan.xi2_opt);
  return scan;
}

}  // namespace squeezeion
