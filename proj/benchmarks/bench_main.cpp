// Microbenchmarks for the hot paths: closed-form evaluations, Monte Carlo
// noise averaging, the fitters, and the dense-matrix oracle building blocks.
// Run with --benchmark_filter=<regex> to select a subset.

#include <benchmark/benchmark.h>

#include <vector>

#include "squeezeion/continuous.hpp"
#include "squeezeion/core_model.hpp"
#include "squeezeion/math.hpp"
#include "squeezeion/oracle/fock.hpp"
#include "squeezeion/oracle/lindblad.hpp"
#include "squeezeion/sensing.hpp"
#include "squeezeion/spin_squeezing.hpp"
#include "squeezeion/stroboscopic.hpp"
#include "squeezeion/units.hpp"

namespace {

using namespace squeezeion;

StroboConfig strobo_config() {
  StroboConfig config;
  config.n_ions = 86;
  config.f = 32000.0;
  config.tau = 5e-4;
  config.gamma = 60.0;
  config.r = 1.25;
  config.nbar = 0.38;
  return config;
}

void bm_strobo_bright_fraction(benchmark::State& state) {
  const StroboConfig config = strobo_config();
  double phi = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(strobo_bright_fraction(config, phi));
    phi += 1e-3;
  }
}
BENCHMARK(bm_strobo_bright_fraction);

void bm_phase_scan_25(benchmark::State& state) {
  const StroboConfig config = strobo_config();
  std::vector<double> phases(25);
  for (int i = 0; i < 25; ++i)
    phases[static_cast<std::size_t>(i)] = two_pi * i / 24.0;
  for (auto _ : state) benchmark::DoNotOptimize(phase_scan(config, phases));
}
BENCHMARK(bm_phase_scan_25);

void bm_fit_strobo_r(benchmark::State& state) {
  const StroboConfig config = strobo_config();
  std::vector<double> phases(25);
  for (int i = 0; i < 25; ++i)
    phases[static_cast<std::size_t>(i)] = two_pi * i / 24.0;
  const auto data = phase_scan(config, phases);
  for (auto _ : state) benchmark::DoNotOptimize(fit_strobo_r(data, config, 0.2));
}
BENCHMARK(bm_fit_strobo_r)->Unit(benchmark::kMillisecond);

ContinuousConfig continuous_config() {
  ContinuousConfig config;
  config.n_ions = 86;
  config.drive.f = to_angular(1000.0);
  config.drive.tau = 1e-3;
  config.drive.t_pi = 5e-5;
  config.drive.gamma = 60.0;
  config.motion.nbar = 28.0;
  config.motion.beta = cd(13.0, 0.0);
  return config;
}

void bm_continuous_bright_fraction(benchmark::State& state) {
  const ContinuousConfig config = continuous_config();
  double delta = to_angular(700.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(bright_fraction_at(config, delta));
    delta += 1e-3;
  }
}
BENCHMARK(bm_continuous_bright_fraction);

void bm_fit_decoupling_scan(benchmark::State& state) {
  const ContinuousConfig config = continuous_config();
  DecouplingScanData data;
  for (int i = 0; i < 201; ++i) {
    const double hz = 200.0 + (4800.0 - 200.0) * i / 200.0;
    data.delta_rad_s.push_back(to_angular(hz));
    data.bright_fraction.push_back(bright_fraction_at(config, to_angular(hz)));
  }
  for (auto _ : state)
    benchmark::DoNotOptimize(fit_decoupling_scan(data, config));
}
BENCHMARK(bm_fit_decoupling_scan)->Unit(benchmark::kMillisecond);

void bm_sensitivity_scan(benchmark::State& state) {
  SensitivityParams params;
  params.f = to_angular(1700.0);
  params.gamma = 60.0;
  params.nbar = 0.38;
  params.r = 1.25;
  params.sigma = to_angular(40.0);
  params.g = to_angular(4970.0);
  const auto taus = log_grid(1e-5, 1e-2, 241);
  for (auto _ : state)
    benchmark::DoNotOptimize(sensitivity_scan(params, taus));
}
BENCHMARK(bm_sensitivity_scan)->Unit(benchmark::kMillisecond);

SqueezeRunParams squeeze_params() {
  SqueezeRunParams params;
  params.n_ions = 400;
  params.f = 3027.8204290674485;
  params.g = to_angular(4000.0);
  params.nbar = 0.5;
  params.rates.gamma_ud = 16.48061998652431;
  params.rates.gamma_du = 16.48061998652431;
  params.rates.gamma_el = 54.93539995508104;
  params.single_loop = true;
  return params;
}

void bm_xi2_at(benchmark::State& state) {
  const SqueezeRunParams params = squeeze_params();
  for (auto _ : state) benchmark::DoNotOptimize(xi2_at(params, 1e-3, 0.0));
}
BENCHMARK(bm_xi2_at);

void bm_xi2_averaged_100(benchmark::State& state) {
  const SqueezeRunParams params = squeeze_params();
  std::vector<double> offsets(100);
  for (int i = 0; i < 100; ++i)
    offsets[static_cast<std::size_t>(i)] = to_angular(40.0) * (i - 50) / 50.0;
  for (auto _ : state)
    benchmark::DoNotOptimize(xi2_averaged(params, 1e-3, offsets));
}
BENCHMARK(bm_xi2_averaged_100)->Unit(benchmark::kMillisecond);

void bm_squeezing_scan_noisefree(benchmark::State& state) {
  SqueezeRunParams params = squeeze_params();
  params.noise = NoiseModel{};
  const auto taus = log_grid(1e-5, 1e-2, 241);
  for (auto _ : state)
    benchmark::DoNotOptimize(squeezing_scan(params, taus));
}
BENCHMARK(bm_squeezing_scan_noisefree)->Unit(benchmark::kMillisecond);

void bm_gaussian_offsets(benchmark::State& state) {
  NoiseModel noise;
  noise.sigma_hz = 40.0;
  noise.n_samples = static_cast<int>(state.range(0));
  noise.seed = 12345;
  for (auto _ : state) benchmark::DoNotOptimize(gaussian_offsets(noise));
}
BENCHMARK(bm_gaussian_offsets)->Arg(1000)->Arg(4000);

void bm_displacement_op_dim128(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(oracle::displacement_op(128, cd(1.5, -0.7)));
}
BENCHMARK(bm_displacement_op_dim128)->Unit(benchmark::kMillisecond);

void bm_lindblad_xi2_n2(benchmark::State& state) {
  DecoherenceRates rates;
  rates.gamma_ud = 30.0;
  rates.gamma_du = 30.0;
  rates.gamma_el = 100.0;
  for (auto _ : state)
    benchmark::DoNotOptimize(
        oracle::lindblad_xi2(2, 500.0, rates, cd(0.2, -0.1), 0.5, 1e-3));
}
BENCHMARK(bm_lindblad_xi2_n2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
