#include <doctest.h>

#include <cmath>
#include <vector>

#include "squeezeion/core_model.hpp"
#include "squeezeion/errors.hpp"
#include "squeezeion/math.hpp"
#include "squeezeion/spin_squeezing.hpp"
#include "squeezeion/units.hpp"

using namespace squeezeion;

namespace {

DecoherenceRates make_rates() {
  DecoherenceRates rates;
  rates.gamma_ud = 16.0;
  rates.gamma_du = 16.0;
  rates.gamma_el = 55.0;
  return rates;
}

SqueezeRunParams make_params() {
  SqueezeRunParams params;
  params.n_ions = 400;
  params.f = 3027.8204290674485;
  params.g = 0.0;
  params.rates = make_rates();
  params.nbar = 0.5;
  params.single_loop = true;
  return params;
}

}  // namespace

TEST_CASE("decoherence rate combinations") {
  const DecoherenceRates rates = make_rates();
  CHECK(rates.gamma_r() == 32.0);
  CHECK(rates.gamma_total() == 0.5 * (32.0 + 55.0));
  CHECK(rates.gamma_asym() == 0.0);
  DecoherenceRates bad;
  bad.gamma_el = -1.0;
  CHECK_THROWS_AS(bad.validate(), error);
}

TEST_CASE("propagator factors reduce to the rate-free rotation") {
  const DecoherenceRates none{};
  for (const double J : {500.0, -800.0}) {
    for (const double t : {1e-4, 7e-4, 2e-3}) {
      const PhiPsi f = phi_psi(J, t, none, 6);
      const double angle = 2.0 * J * t / 6.0;
      CHECK(std::abs(f.phi - cd(std::cos(angle), 0.0)) < 1e-12);
      CHECK(std::abs(f.psi - cd(0.0, std::sin(angle))) < 1e-12);
    }
  }
  // At t = 0 nothing has happened yet.
  const PhiPsi start = phi_psi(700.0, 0.0, make_rates(), 4);
  CHECK(std::abs(start.phi - cd(1.0, 0.0)) < 1e-14);
  CHECK(std::abs(start.psi) < 1e-14);
}

TEST_CASE("spectator factor stays a contraction") {
  // phi is an average of unit-modulus trajectory phases, so its magnitude can
  // never exceed 1 for any coupling, time, or rate combination. (Note it is
  // NOT monotone in the rates: symmetric flips interrupt the phase a
  // spectator imprints, which can slow the J-induced decay.)
  for (const double J : {0.0, 80.0, 600.0, 5000.0}) {
    for (const double t : {1e-5, 1e-3, 5e-3}) {
      for (const double gamma : {0.0, 30.0, 400.0}) {
        DecoherenceRates rates;
        rates.gamma_ud = gamma;
        rates.gamma_du = 0.5 * gamma;
        const PhiPsi factors = phi_psi(J, t, rates, 4);
        CHECK(std::abs(factors.phi) <= 1.0 + 1e-12);
      }
    }
  }
  // An uncoupled spectator contributes nothing, no matter how fast it flips:
  // at J = 0 with symmetric rates the factor is exactly 1.
  DecoherenceRates flips;
  flips.gamma_ud = 250.0;
  flips.gamma_du = 250.0;
  const PhiPsi idle = phi_psi(0.0, 2e-3, flips, 4);
  CHECK(std::abs(idle.phi - cd(1.0, 0.0)) < 1e-12);
}

TEST_CASE("correlators start from the coherent-spin state") {
  const Correlators c =
      spin_correlators(5, 900.0, cd(0.0, 0.0), 0.5, 0.0, make_rates());
  CHECK(std::abs(c.sp - cd(0.5, 0.0)) < 1e-14);
  CHECK(std::abs(c.spp - cd(0.25, 0.0)) < 1e-14);
  CHECK(std::abs(c.spm - cd(0.25, 0.0)) < 1e-14);
  CHECK(std::abs(c.spz) < 1e-14);
  CHECK(std::abs(c.m) < 1e-14);
  CHECK(std::abs(c.mzz) < 1e-14);
}

TEST_CASE("residual spin-motion displacement dephases the coherence") {
  const double t = 3e-4;
  const Correlators clean =
      spin_correlators(4, 800.0, cd(0.0, 0.0), 1.5, t, DecoherenceRates{});
  const Correlators fuzzed =
      spin_correlators(4, 800.0, cd(0.3, 0.1), 1.5, t, DecoherenceRates{});
  CHECK(std::abs(fuzzed.sp) < std::abs(clean.sp));
  // Populations are untouched by pure dephasing.
  CHECK(fuzzed.m == doctest::Approx(clean.m).epsilon(1e-12));
  CHECK(fuzzed.mzz == doctest::Approx(clean.mzz).epsilon(1e-12));
}

TEST_CASE("collective moments of the coherent-spin state") {
  const int n = 12;
  const Correlators c =
      spin_correlators(n, 500.0, cd(0.0, 0.0), 0.0, 0.0, DecoherenceRates{});
  const SpinMoments m = collective_moments(c, n);
  CHECK(m.sx == doctest::Approx(n / 2.0).epsilon(1e-12));
  CHECK(std::abs(m.sy) < 1e-12);
  CHECK(std::abs(m.sz) < 1e-12);
  CHECK(m.var_sy == doctest::Approx(n / 4.0).epsilon(1e-12));
  CHECK(m.var_sz == doctest::Approx(n / 4.0).epsilon(1e-12));
  CHECK(std::abs(m.cov_yz) < 1e-12);
  const RamseyXi2 xi = ramsey_xi2(m, n);
  CHECK(xi.xi2 == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("twisting squeezes below the projection limit") {
  // Rate-free one-axis twisting at short times squeezes: xi^2 < 1.
  const int n = 20;
  const double J = 600.0;
  const double t = 2e-4;
  const Correlators c =
      spin_correlators(n, J, cd(0.0, 0.0), 0.0, t, DecoherenceRates{});
  const RamseyXi2 xi = ramsey_xi2(collective_moments(c, n), n);
  CHECK(xi.xi2 < 1.0);
  CHECK(xi.xi2 > 0.0);
}

TEST_CASE("closed-form quadrature minimum matches a dense angle scan") {
  const int n = 30;
  const Correlators c =
      spin_correlators(n, 700.0, cd(0.2, 0.05), 0.8, 4e-4, make_rates());
  const SpinMoments m = collective_moments(c, n);
  const RamseyXi2 xi = ramsey_xi2(m, n);
  double grid_min = 1e300;
  for (int i = 0; i < 1441; ++i) {
    const double psi = pi * i / 1440.0;
    const double var = m.var_sy * std::cos(psi) * std::cos(psi) +
                       m.var_sz * std::sin(psi) * std::sin(psi) +
                       2.0 * m.cov_yz * std::sin(psi) * std::cos(psi);
    grid_min = std::min(grid_min, var);
  }
  const double len2 = m.sx * m.sx + m.sy * m.sy + m.sz * m.sz;
  const double xi2_grid = n * grid_min / len2;
  CHECK(xi.xi2 <= xi2_grid + 1e-10);
  CHECK(xi.xi2 == doctest::Approx(xi2_grid).epsilon(1e-5));
}

TEST_CASE("vanishing contrast throws degenerate-contrast") {
  SpinMoments m{};
  m.var_sy = 1.0;
  m.var_sz = 1.0;
  CHECK_THROWS_AS(ramsey_xi2(m, 4), error);
  try {
    ramsey_xi2(m, 4);
  } catch (const error& e) {
    CHECK(e.code() == errc::degenerate_contrast);
  }
}

TEST_CASE("single-loop detuning closes one loop") {
  const double tau = 1e-3;
  const double g = to_angular(4000.0);
  const double delta = single_loop_detuning(tau, g);
  CHECK(delta == doctest::Approx(std::sqrt(std::pow(two_pi / tau, 2) + g * g))
                     .epsilon(1e-14));
  // The dressed detuning then satisfies delta' tau = 2 pi exactly.
  const BogoliubovFrame frame = bogoliubov_frame(delta, g, 1.0, 0.0);
  CHECK(frame.delta_prime * tau == doctest::Approx(two_pi).epsilon(1e-12));
  CHECK(ising_rate_reference(300.0, to_angular(830.0)) ==
        doctest::Approx(300.0 * 300.0 / (2.0 * to_angular(830.0))).epsilon(1e-15));
}

TEST_CASE("residual displacement vanishes at loop closure") {
  const double tau = 8e-4;
  const double g = to_angular(2000.0);
  const double delta = single_loop_detuning(tau, g);
  const BogoliubovFrame frame = bogoliubov_frame(delta, g, 400.0, 0.0);
  const JAlpha ja = effective_J_alpha(frame, tau, 50);
  CHECK(std::abs(ja.alpha) < 1e-10);
  // One full loop: sinc(2 pi) = 0, so J takes its plateau value f'^2/delta'.
  const double fp2 = std::norm(frame.f_prime);
  CHECK(ja.J == doctest::Approx(fp2 / frame.delta_prime).epsilon(1e-9));
}

TEST_CASE("xi2_at rejects unstable offsets and averages reduce correctly") {
  SqueezeRunParams params = make_params();
  params.g = to_angular(4000.0);
  const double tau = 5e-4;
  CHECK_THROWS_AS(
      xi2_at(params, tau, -(single_loop_detuning(tau, params.g))), error);
  const RamseyXi2 direct = xi2_at(params, tau, 0.0);
  const Xi2Averaged averaged = xi2_averaged(params, tau, {});
  CHECK(averaged.xi2 == direct.xi2);
  CHECK(averaged.psi_opt == direct.psi_opt);
  CHECK(averaged.rejected_fraction == 0.0);
  // Averaging over symmetric offsets differs from the center value.
  const double eps = to_angular(40.0);
  const Xi2Averaged spread = xi2_averaged(params, tau, {-eps, 0.0, eps});
  CHECK(spread.xi2 !=
        direct.xi2);  // curvature of xi^2 in the detuning offset
  CHECK(spread.rejected_fraction == 0.0);
}

TEST_CASE("squeezing scan finds an interior optimum consistent with its points") {
  SqueezeRunParams params = make_params();
  const auto taus = log_grid(1e-4, 5e-3, 61);
  const SqueezeScanResult scan = squeezing_scan(params, taus);
  REQUIRE(scan.points.size() == taus.size());
  REQUIRE(scan.has_optimum);
  double best = 1e300;
  for (const SqueezePoint& p : scan.points)
    if (p.valid) best = std::min(best, p.xi2);
  // Local refinement around the grid argmin may only improve on it.
  CHECK(scan.xi2_opt <= best);
  CHECK(scan.xi2_opt > 0.9 * best);
  CHECK(scan.squeezing_db_opt ==
        doctest::Approx(-10.0 * std::log10(scan.xi2_opt)).epsilon(1e-14));
  CHECK(scan.xi2_opt < 1.0);  // these parameters do squeeze
  CHECK(scan.tau_opt > taus.front());
  CHECK(scan.tau_opt < taus.back());
}

TEST_CASE("squeezing scan is deterministic for a fixed seed") {
  SqueezeRunParams params = make_params();
  params.g = to_angular(4000.0);
  params.noise.sigma_hz = 40.0;
  params.noise.n_samples = 50;
  params.noise.seed = 2024;
  const auto taus = log_grid(2e-4, 2e-3, 31);
  const SqueezeScanResult a = squeezing_scan(params, taus);
  const SqueezeScanResult b = squeezing_scan(params, taus);
  REQUIRE(a.points.size() == b.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    CHECK(a.points[i].xi2 == b.points[i].xi2);
    CHECK(a.points[i].rejected_fraction == b.points[i].rejected_fraction);
  }
  CHECK(a.tau_opt == b.tau_opt);
  CHECK(a.xi2_opt == b.xi2_opt);
}

TEST_CASE("run-parameter validation") {
  SqueezeRunParams params = make_params();
  params.n_ions = 1;
  CHECK_THROWS_AS(params.validate(), error);
  params = make_params();
  params.single_loop = false;
  params.delta = 0.0;
  CHECK_THROWS_AS(params.validate(), error);
  params.delta = to_angular(830.0);
  CHECK_NOTHROW(params.validate());
}
