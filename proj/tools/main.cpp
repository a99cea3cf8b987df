// Command-line front end: evaluates the bundled models over scan grids, fits
// measured tables, and runs the closed-form-vs-oracle cross-check manifest.
// All numeric output is byte-reproducible for a fixed run file; wall-clock
// metadata is opt-in (--stamp).

#include <cstdint>
#include <cstdio>
#include <ctime>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "squeezeion/continuous.hpp"
#include "squeezeion/core_model.hpp"
#include "squeezeion/errors.hpp"
#include "squeezeion/io/config.hpp"
#include "squeezeion/io/csv.hpp"
#include "squeezeion/math.hpp"
#include "squeezeion/oracle/checks.hpp"
#include "squeezeion/sensing.hpp"
#include "squeezeion/spin_squeezing.hpp"
#include "squeezeion/stroboscopic.hpp"
#include "squeezeion/units.hpp"

namespace {

using nlohmann::json;
using namespace squeezeion;

struct CommonOpts {
  std::string config_path;
  std::string out_path;
  std::string in_path;
  std::string format{"csv"};
  std::uint64_t seed{};
  int samples{1};
  bool has_seed{};
  bool has_samples{};
  bool stamp{};
};

int exit_code_for(errc code) {
  switch (code) {
    case errc::fit_failure:
      return 3;
    case errc::oracle_failure:
      return 4;
    default:
      return 2;
  }
}

std::string hex64(std::uint64_t value) {
  char buffer[17];
  std::snprintf(buffer, sizeof buffer, "%016llx",
                static_cast<unsigned long long>(value));
  return buffer;
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buffer[32];
  std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buffer;
}

json table_json(const io::Table& table) {
  json rows = json::array();
  for (const auto& row : table.rows) rows.push_back(row);
  return json{{"columns", table.columns}, {"rows", rows}};
}

void emit(const io::Table& table, const json& summary, const CommonOpts& opts,
          const std::string& subcommand, const io::RunConfig& run) {
  const std::string payload = opts.format == "json"
                                  ? table_json(table).dump(2) + "\n"
                                  : io::to_csv(table);
  if (opts.out_path.empty()) {
    std::fwrite(payload.data(), 1, payload.size(), stdout);
    return;
  }
  io::write_text_file(opts.out_path, payload);
  json meta{
      {"subcommand", subcommand},
      {"version", SQUEEZEION_VERSION},
      {"config_hash", hex64(run.hash)},
      {"seed", run.noise.seed},
      {"n_samples", run.noise.n_samples},
      {"columns", table.columns},
      {"rows", table.rows.size()},
  };
  if (!summary.empty()) meta["summary"] = summary;
  if (opts.stamp) meta["timestamp_utc"] = utc_timestamp();
  io::write_text_file(opts.out_path + ".meta.json", meta.dump(2) + "\n");
}

io::RunConfig load(const CommonOpts& opts) {
  io::RunConfig run = io::load_run_config(opts.config_path);
  if (opts.has_seed) run.noise.seed = opts.seed;
  if (opts.has_samples) run.noise.n_samples = opts.samples;
  run.noise.validate();
  return run;
}

std::string input_path(const CommonOpts& opts, const std::string& from_config,
                       const char* config_key) {
  if (!opts.in_path.empty()) return opts.in_path;
  require(!from_config.empty(), errc::config_error,
          std::string("no input table: set ") + config_key + " or pass --in");
  return from_config;
}

std::optional<std::size_t> optional_column(const io::Table& table,
                                           const std::string& name) {
  for (std::size_t c = 0; c < table.columns.size(); ++c)
    if (table.columns[c] == name) return c;
  return std::nullopt;
}

int cmd_strobo_scan(const CommonOpts& opts) {
  const io::RunConfig run = load(opts);
  const StroboConfig config = io::strobo_config(run);
  const std::vector<PhaseScanPoint> points =
      phase_scan(config, io::phase_grid(run.scan));
  io::Table table;
  table.columns = {"delta_phi_rad", "bright_fraction", "std_dev"};
  for (const PhaseScanPoint& p : points)
    table.rows.push_back({p.delta_phi, p.bright_fraction, p.std_dev});
  emit(table, json::object(), opts, "strobo-scan", run);
  return 0;
}

int cmd_fit_strobo(const CommonOpts& opts) {
  const io::RunConfig run = load(opts);
  const StroboConfig config = io::strobo_config(run);
  const io::Table data =
      io::read_csv_file(input_path(opts, run.fit.data_csv, "fit.data_csv"));
  const std::size_t c_phi = io::column_index(data, "delta_phi_rad");
  const std::size_t c_p = io::column_index(data, "bright_fraction");
  const std::optional<std::size_t> c_sd = optional_column(data, "std_dev");
  std::vector<PhaseScanPoint> points;
  points.reserve(data.rows.size());
  for (const auto& row : data.rows)
    points.push_back({row[c_phi], row[c_p], c_sd ? row[*c_sd] : 0.0});

  const StroboFitResult fit = fit_strobo_r(points, config, run.fit.nbar_uncertainty);
  const auto [amplitude_db, variance_db] = squeezing_db(fit.r_hat);
  io::Table table;
  table.columns = {"r_hat",      "r_uncertainty",     "r_refit_lo",
                   "r_refit_hi", "sse",               "amplitude_gain_db",
                   "variance_gain_db"};
  table.rows.push_back({fit.r_hat, fit.r_uncertainty, fit.r_refit_lo,
                        fit.r_refit_hi, fit.sse, amplitude_db, variance_db});
  json summary{{"r_hat", fit.r_hat},
               {"r_uncertainty", fit.r_uncertainty},
               {"amplitude_gain_db", amplitude_db},
               {"variance_gain_db", variance_db}};
  emit(table, summary, opts, "fit-strobo", run);
  return 0;
}

int cmd_sensitivity(const CommonOpts& opts) {
  const io::RunConfig run = load(opts);
  const SensitivityParams params = io::sensitivity_params(run);
  const SensitivityScan scan = sensitivity_scan(params, io::tau_grid(run.scan));
  io::Table table;
  table.columns = {"tau_s", "var_r", "var_r0", "gain_db", "db_below_sql"};
  for (const SensitivityPoint& p : scan.points)
    table.rows.push_back({p.tau_s, p.var_r, p.var_r0, p.gain_db, p.db_below_sql});
  json summary{{"tau_opt_r_s", scan.tau_opt_r},
               {"tau_opt_r0_s", scan.tau_opt_r0},
               {"var_min_r", scan.var_min_r},
               {"var_min_r0", scan.var_min_r0},
               {"gain_optimal_db", scan.gain_optimal_db}};
  emit(table, summary, opts, "sensitivity", run);
  return 0;
}

int cmd_decouple_scan(const CommonOpts& opts) {
  const io::RunConfig run = load(opts);
  const ContinuousConfig config = io::continuous_config(run);
  const std::vector<double> hz = io::delta_grid_hz(run.scan);
  const std::vector<BrightResult> results =
      decouple_scan(config, io::delta_grid_rad_s(run.scan));
  io::Table table;
  table.columns = {"delta_hz", "bright_fraction", "rejected_fraction"};
  for (std::size_t i = 0; i < results.size(); ++i)
    table.rows.push_back({hz[i], results[i].value, results[i].rejected_fraction});
  emit(table, json::object(), opts, "decouple-scan", run);
  return 0;
}

int cmd_fit_decouple(const CommonOpts& opts) {
  const io::RunConfig run = load(opts);
  const ContinuousConfig config = io::continuous_config(run);
  const io::Table data =
      io::read_csv_file(input_path(opts, run.fit.data_csv, "fit.data_csv"));
  const std::size_t c_delta = io::column_index(data, "delta_hz");
  const std::size_t c_p = io::column_index(data, "bright_fraction");
  DecouplingScanData scan_data;
  scan_data.delta_rad_s.reserve(data.rows.size());
  scan_data.bright_fraction.reserve(data.rows.size());
  for (const auto& row : data.rows) {
    scan_data.delta_rad_s.push_back(to_angular(row[c_delta]));
    scan_data.bright_fraction.push_back(row[c_p]);
  }

  const DecoupleFitResult fit = fit_decoupling_scan(scan_data, config);
  io::Table table;
  table.columns = {"nbar_hat", "beta_hat", "sse", "iterations"};
  table.rows.push_back({fit.nbar_hat, fit.beta_hat, fit.sse,
                        static_cast<double>(fit.iterations)});
  json summary{{"nbar_hat", fit.nbar_hat}, {"beta_hat", fit.beta_hat}};
  emit(table, summary, opts, "fit-decouple", run);
  return 0;
}

int cmd_extract_g(const CommonOpts& opts) {
  const io::RunConfig run = load(opts);
  require(run.extract.delta_hz > 0.0, errc::config_error,
          "extract.delta_hz must be > 0");
  require(run.extract.tau_s > 0.0, errc::config_error, "extract.tau_s must be > 0");
  require(run.extract.k >= 1, errc::config_error, "extract.k must be >= 1");
  const double g =
      extract_g(to_angular(run.extract.delta_hz), run.extract.tau_s, run.extract.k);
  io::Table table;
  table.columns = {"g_hz", "g_rad_s"};
  table.rows.push_back({to_ordinary_hz(g), g});
  json summary{{"g_hz", to_ordinary_hz(g)}};
  emit(table, summary, opts, "extract-g", run);
  return 0;
}

int cmd_fit_gv(const CommonOpts& opts) {
  const io::RunConfig run = load(opts);
  const io::Table data = io::read_csv_file(
      input_path(opts, run.calibration.data_csv, "calibration.data_csv"));
  const std::size_t c_v = io::column_index(data, "voltage_v");
  const std::size_t c_g = io::column_index(data, "g_hz");
  const std::optional<std::size_t> c_tau = optional_column(data, "tau_s");
  std::vector<GCalibrationPoint> points;
  points.reserve(data.rows.size());
  for (const auto& row : data.rows)
    points.push_back({row[c_v], to_angular(row[c_g]), c_tau ? row[*c_tau] : 0.0});

  const LinearFitResult fit = fit_linear_g(points, run.calibration.fit_intercept);
  io::Table table;
  table.columns = {"slope_hz_per_v", "intercept_hz", "sse_hz2"};
  table.rows.push_back({to_ordinary_hz(fit.slope), to_ordinary_hz(fit.intercept),
                        fit.sse / (two_pi * two_pi)});
  json summary{{"slope_hz_per_v", to_ordinary_hz(fit.slope)},
               {"intercept_hz", to_ordinary_hz(fit.intercept)},
               {"points", points.size()}};
  emit(table, summary, opts, "fit-gv", run);
  return 0;
}

int cmd_spin_squeeze(const CommonOpts& opts) {
  const io::RunConfig run = load(opts);
  const SqueezeRunParams params = io::squeeze_params(run);
  const SqueezeScanResult result = squeezing_scan(params, io::tau_grid(run.scan));
  io::Table table;
  table.columns = {"tau_s",        "xi2",
                   "xi_db",        "psi_opt_rad",
                   "rejected_fraction", "valid"};
  for (const SqueezePoint& p : result.points)
    table.rows.push_back({p.tau_s, p.xi2, p.xi_db, p.psi_opt, p.rejected_fraction,
                          p.valid ? 1.0 : 0.0});
  json summary{{"has_optimum", result.has_optimum},
               {"tau_opt_s", result.tau_opt},
               {"xi2_opt", result.xi2_opt},
               {"squeezing_db_opt", result.squeezing_db_opt}};
  emit(table, summary, opts, "spin-squeeze", run);
  return 0;
}

int cmd_oracle_check(const std::string& name, bool list, const CommonOpts& opts) {
  if (list) {
    std::string out;
    for (const std::string& n : oracle::oracle_check_names()) out += n + "\n";
    if (opts.out_path.empty())
      std::fwrite(out.data(), 1, out.size(), stdout);
    else
      io::write_text_file(opts.out_path, out);
    return 0;
  }
  std::vector<oracle::CheckResult> results;
  if (name.empty())
    results = oracle::run_oracle_checks();
  else
    results.push_back(oracle::run_oracle_check(name));

  std::string out;
  bool all_passed = true;
  for (const oracle::CheckResult& r : results) {
    out += r.passed ? "ok   " : "FAIL ";
    out += r.name + " max_deviation=" + format_double(r.max_deviation) +
           " tolerance=" + format_double(r.tolerance) +
           " cases=" + std::to_string(r.cases) + "\n";
    std::fprintf(stderr, "%s: %.1f s\n", r.name.c_str(), r.seconds);
    all_passed = all_passed && r.passed;
  }
  if (opts.out_path.empty())
    std::fwrite(out.data(), 1, out.size(), stdout);
  else
    io::write_text_file(opts.out_path, out);
  require(all_passed, errc::oracle_failure,
          "closed form deviates from its reference oracle beyond tolerance");
  return 0;
}

int run_cli(int argc, char** argv) {
  CLI::App app{
      "models of motional squeezing, amplified displacement sensing, and\n"
      "spin squeezing for a planar ion crystal with a parametric drive"};
  app.set_version_flag("--version", SQUEEZEION_VERSION);
  app.require_subcommand(1);

  CommonOpts opts;
  auto add_common = [&](CLI::App* sub, bool takes_input) {
    sub->add_option("--config", opts.config_path, "run file (JSON, // comments allowed)")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--out", opts.out_path,
                    "output path; a <out>.meta.json sidecar is written next to it "
                    "(stdout when omitted)");
    sub->add_option("--format", opts.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    if (takes_input)
      sub->add_option("--in", opts.in_path,
                      "input data table (overrides the path in the run file)")
          ->check(CLI::ExistingFile);
    sub->add_flag("--stamp", opts.stamp,
                  "record a UTC timestamp in the sidecar (outputs are "
                  "byte-reproducible without it)");
    sub->add_option("--seed", opts.seed, "override noise.seed")
        ->each([&](const std::string&) { opts.has_seed = true; });
    sub->add_option("--samples", opts.samples, "override noise.n_samples")
        ->check(CLI::PositiveNumber)
        ->each([&](const std::string&) { opts.has_samples = true; });
  };

  std::vector<std::pair<CLI::App*, std::function<int()>>> dispatch;
  auto add = [&](const char* name, const char* help, bool takes_input,
                 std::function<int()> fn) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_common(sub, takes_input);
    dispatch.emplace_back(sub, std::move(fn));
  };

  add("strobo-scan",
      "bright fraction vs relative phase for the pulsed squeeze-then-probe "
      "sequence",
      false, [&] { return cmd_strobo_scan(opts); });
  add("fit-strobo",
      "estimate the motional squeezing parameter r from a measured phase scan",
      true, [&] { return cmd_fit_strobo(opts); });
  add("sensitivity",
      "displacement-sensing variance vs interrogation time, amplified vs "
      "unamplified",
      false, [&] { return cmd_sensitivity(opts); });
  add("decouple-scan",
      "spin-echo bright fraction vs detuning with the drives always on", false,
      [&] { return cmd_decouple_scan(opts); });
  add("fit-decouple",
      "estimate thermal occupation and displacement from a detuning scan", true,
      [&] { return cmd_fit_decouple(opts); });
  add("extract-g",
      "parametric rate from a measured spin-motion decoupling detuning", false,
      [&] { return cmd_extract_g(opts); });
  add("fit-gv", "linear calibration of the parametric rate against drive voltage",
      true, [&] { return cmd_fit_gv(opts); });
  add("spin-squeeze",
      "Ramsey squeezing parameter vs interrogation time with decoherence and "
      "detuning noise",
      false, [&] { return cmd_spin_squeeze(opts); });

  std::string check_name;
  bool check_list = false;
  CLI::App* check = app.add_subcommand(
      "oracle-check", "run the closed-form-vs-oracle cross-check manifest");
  check->add_option("--name", check_name, "run a single named check");
  check->add_flag("--list", check_list, "print the manifest names and exit");
  check->add_option("--out", opts.out_path, "write the report here instead of stdout");
  dispatch.emplace_back(check,
                        [&] { return cmd_oracle_check(check_name, check_list, opts); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success))
      return app.exit(e);
    std::cerr << "error: config-error: " << e.what() << "\n";
    return 2;
  }

  for (const auto& [sub, fn] : dispatch)
    if (sub->parsed()) return fn();
  return 2;  // unreachable: require_subcommand(1)
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const squeezeion::error& e) {
    std::cerr << e.tagged() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << "\n";
    return 1;
  }
}
