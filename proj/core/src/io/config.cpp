#include "squeezeion/io/config.hpp"

#include <initializer_list>
#include <string>

#include <json.hpp>

#include "squeezeion/errors.hpp"
#include "squeezeion/io/csv.hpp"
#include "squeezeion/math.hpp"

namespace squeezeion::io {

namespace {

using nlohmann::json;

void check_keys(const json& obj, const std::string& path,
                std::initializer_list<const char*> allowed) {
  require(obj.is_object(), errc::config_error,
          "config: '" + path + "' must be an object");
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* name : allowed)
      if (item.key() == name) {
        known = true;
        break;
      }
    require(known, errc::config_error,
            "config: unknown key '" + path + "." + item.key() + "'");
  }
}

const json* find(const json& obj, const char* key) {
  const auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

double num_or(const json& obj, const std::string& path, const char* key,
              double fallback) {
  const json* v = find(obj, key);
  if (!v) return fallback;
  require(v->is_number(), errc::config_error,
          "config: '" + path + "." + key + "' must be a number");
  return v->get<double>();
}

int int_or(const json& obj, const std::string& path, const char* key, int fallback) {
  const json* v = find(obj, key);
  if (!v) return fallback;
  require(v->is_number_integer(), errc::config_error,
          "config: '" + path + "." + key + "' must be an integer");
  return v->get<int>();
}

std::uint64_t uint_or(const json& obj, const std::string& path, const char* key,
                      std::uint64_t fallback) {
  const json* v = find(obj, key);
  if (!v) return fallback;
  require(v->is_number_unsigned() ||
              (v->is_number_integer() && v->get<std::int64_t>() >= 0),
          errc::config_error,
          "config: '" + path + "." + key + "' must be a non-negative integer");
  return v->get<std::uint64_t>();
}

bool bool_or(const json& obj, const std::string& path, const char* key,
             bool fallback) {
  const json* v = find(obj, key);
  if (!v) return fallback;
  require(v->is_boolean(), errc::config_error,
          "config: '" + path + "." + key + "' must be a boolean");
  return v->get<bool>();
}

std::string str_or(const json& obj, const std::string& path, const char* key,
                   const std::string& fallback) {
  const json* v = find(obj, key);
  if (!v) return fallback;
  require(v->is_string(), errc::config_error,
          "config: '" + path + "." + key + "' must be a string");
  return v->get<std::string>();
}

// Reference apparatus used when a run file omits the trap section: a planar
// 9Be+ crystal (axial 1.59 MHz, cyclotron 7.6 MHz, rotation 180 kHz).
TrapParams default_trap() {
  TrapParams trap;
  trap.omega_z_hz = 1.59e6;
  trap.omega_c_hz = 7.6e6;
  trap.omega_r_hz = 180e3;
  trap.n_ions = 1;
  trap.mass_kg = 1.4965e-26;
  trap.charge_c = 1.602e-19;
  return trap;
}

}  // namespace

void ScanSettings::validate() const {
  require(n_points >= 2, errc::config_error, "scan.n_points must be >= 2");
  require(phase_hi_rad > phase_lo_rad, errc::config_error,
          "scan phase range must have phase_hi_rad > phase_lo_rad");
  require(delta_lo_hz > 0.0 && delta_hi_hz > delta_lo_hz, errc::config_error,
          "scan detuning range must have 0 < delta_lo_hz < delta_hi_hz");
  require(tau_lo_s > 0.0 && tau_hi_s > tau_lo_s, errc::config_error,
          "scan time range must have 0 < tau_lo_s < tau_hi_s");
}

RunConfig parse_run_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text, /*cb=*/nullptr, /*allow_exceptions=*/true,
                       /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    fail(errc::config_error, std::string("config: ") + e.what());
  }
  check_keys(root, "$",
             {"trap", "drive", "motion", "noise", "scan", "squeeze", "fit",
              "extract", "calibration"});

  RunConfig run;
  run.trap = default_trap();
  run.drive.tau = 1e-3;  // smallest self-consistent default; run files override

  if (const json* trap = find(root, "trap")) {
    check_keys(*trap, "trap",
               {"omega_z_hz", "omega_c_hz", "omega_r_hz", "n_ions", "mass_kg",
                "charge_c"});
    run.trap.omega_z_hz = num_or(*trap, "trap", "omega_z_hz", run.trap.omega_z_hz);
    run.trap.omega_c_hz = num_or(*trap, "trap", "omega_c_hz", run.trap.omega_c_hz);
    run.trap.omega_r_hz = num_or(*trap, "trap", "omega_r_hz", run.trap.omega_r_hz);
    run.trap.n_ions = int_or(*trap, "trap", "n_ions", run.trap.n_ions);
    run.trap.mass_kg = num_or(*trap, "trap", "mass_kg", run.trap.mass_kg);
    run.trap.charge_c = num_or(*trap, "trap", "charge_c", run.trap.charge_c);
  }

  if (const json* drive = find(root, "drive")) {
    check_keys(*drive, "drive",
               {"f_hz", "phi_odf_rad", "delta_hz", "gamma_per_s", "tau_s",
                "t_pi_s", "g_hz", "theta_rad", "delta_phi_rad", "delta_phi_c_rad"});
    run.drive.f =
        to_angular(num_or(*drive, "drive", "f_hz", to_ordinary_hz(run.drive.f)));
    run.drive.phi_odf = num_or(*drive, "drive", "phi_odf_rad", run.drive.phi_odf);
    run.drive.delta = to_angular(num_or(*drive, "drive", "delta_hz",
                                        to_ordinary_hz(run.drive.delta)));
    run.drive.gamma = num_or(*drive, "drive", "gamma_per_s", run.drive.gamma);
    run.drive.tau = num_or(*drive, "drive", "tau_s", run.drive.tau);
    run.drive.t_pi = num_or(*drive, "drive", "t_pi_s", run.drive.t_pi);
    run.drive.g =
        to_angular(num_or(*drive, "drive", "g_hz", to_ordinary_hz(run.drive.g)));
    run.drive.theta = num_or(*drive, "drive", "theta_rad", run.drive.theta);
    run.drive.delta_phi =
        num_or(*drive, "drive", "delta_phi_rad", run.drive.delta_phi);
    run.drive.delta_phi_c =
        num_or(*drive, "drive", "delta_phi_c_rad", run.drive.delta_phi_c);
  }

  if (const json* motion = find(root, "motion")) {
    check_keys(*motion, "motion", {"nbar", "beta_re", "beta_im", "r"});
    run.motion.nbar = num_or(*motion, "motion", "nbar", run.motion.nbar);
    run.motion.beta = cd(num_or(*motion, "motion", "beta_re", run.motion.beta.real()),
                         num_or(*motion, "motion", "beta_im", run.motion.beta.imag()));
    run.motion.r = num_or(*motion, "motion", "r", run.motion.r);
  }

  if (const json* noise = find(root, "noise")) {
    check_keys(*noise, "noise", {"sigma_hz", "n_samples", "seed"});
    run.noise.sigma_hz = num_or(*noise, "noise", "sigma_hz", run.noise.sigma_hz);
    run.noise.n_samples = int_or(*noise, "noise", "n_samples", run.noise.n_samples);
    run.noise.seed = uint_or(*noise, "noise", "seed", run.noise.seed);
  }

  if (const json* scan = find(root, "scan")) {
    check_keys(*scan, "scan",
               {"n_points", "phase_lo_rad", "phase_hi_rad", "delta_lo_hz",
                "delta_hi_hz", "tau_lo_s", "tau_hi_s", "tau_log"});
    run.scan.n_points = int_or(*scan, "scan", "n_points", run.scan.n_points);
    run.scan.phase_lo_rad =
        num_or(*scan, "scan", "phase_lo_rad", run.scan.phase_lo_rad);
    run.scan.phase_hi_rad =
        num_or(*scan, "scan", "phase_hi_rad", run.scan.phase_hi_rad);
    run.scan.delta_lo_hz = num_or(*scan, "scan", "delta_lo_hz", run.scan.delta_lo_hz);
    run.scan.delta_hi_hz = num_or(*scan, "scan", "delta_hi_hz", run.scan.delta_hi_hz);
    run.scan.tau_lo_s = num_or(*scan, "scan", "tau_lo_s", run.scan.tau_lo_s);
    run.scan.tau_hi_s = num_or(*scan, "scan", "tau_hi_s", run.scan.tau_hi_s);
    run.scan.tau_log = bool_or(*scan, "scan", "tau_log", run.scan.tau_log);
  }

  if (const json* squeeze = find(root, "squeeze")) {
    check_keys(*squeeze, "squeeze",
               {"gamma_ud_per_s", "gamma_du_per_s", "gamma_el_per_s", "single_loop",
                "average_mode"});
    run.squeeze.rates.gamma_ud =
        num_or(*squeeze, "squeeze", "gamma_ud_per_s", run.squeeze.rates.gamma_ud);
    run.squeeze.rates.gamma_du =
        num_or(*squeeze, "squeeze", "gamma_du_per_s", run.squeeze.rates.gamma_du);
    run.squeeze.rates.gamma_el =
        num_or(*squeeze, "squeeze", "gamma_el_per_s", run.squeeze.rates.gamma_el);
    run.squeeze.single_loop =
        bool_or(*squeeze, "squeeze", "single_loop", run.squeeze.single_loop);
    run.squeeze.average_mode =
        str_or(*squeeze, "squeeze", "average_mode", run.squeeze.average_mode);
    require(run.squeeze.average_mode == "xi2" || run.squeeze.average_mode == "moments",
            errc::config_error,
            "config: squeeze.average_mode must be 'xi2' or 'moments'");
  }

  if (const json* fit = find(root, "fit")) {
    check_keys(*fit, "fit", {"data_csv", "nbar_uncertainty"});
    run.fit.data_csv = str_or(*fit, "fit", "data_csv", run.fit.data_csv);
    run.fit.nbar_uncertainty =
        num_or(*fit, "fit", "nbar_uncertainty", run.fit.nbar_uncertainty);
    require(run.fit.nbar_uncertainty >= 0.0, errc::config_error,
            "config: fit.nbar_uncertainty must be >= 0");
  }

  if (const json* extract = find(root, "extract")) {
    check_keys(*extract, "extract", {"delta_hz", "tau_s", "k"});
    run.extract.delta_hz = num_or(*extract, "extract", "delta_hz", run.extract.delta_hz);
    run.extract.tau_s = num_or(*extract, "extract", "tau_s", run.extract.tau_s);
    run.extract.k = int_or(*extract, "extract", "k", run.extract.k);
  }

  if (const json* calibration = find(root, "calibration")) {
    check_keys(*calibration, "calibration", {"data_csv", "fit_intercept"});
    run.calibration.data_csv =
        str_or(*calibration, "calibration", "data_csv", run.calibration.data_csv);
    run.calibration.fit_intercept = bool_or(*calibration, "calibration",
                                            "fit_intercept",
                                            run.calibration.fit_intercept);
  }

  run.trap.validate();
  run.drive.validate();
  run.motion.validate();
  run.noise.validate();
  run.scan.validate();
  run.squeeze.rates.validate();
  run.hash = fnv1a64(root.dump());
  return run;
}

RunConfig load_run_config(const std::string& path) {
  return parse_run_config(read_text_file(path));
}

StroboConfig strobo_config(const RunConfig& run) {
  StroboConfig config;
  config.n_ions = run.trap.n_ions;
  config.f = run.drive.f;
  config.tau = run.drive.tau;
  config.gamma = run.drive.gamma;
  config.r = run.motion.r;
  config.nbar = run.motion.nbar;
  config.theta = run.drive.theta;
  config.g = run.drive.g;
  config.validate();
  return config;
}

ContinuousConfig continuous_config(const RunConfig& run) {
  ContinuousConfig config;
  config.n_ions = run.trap.n_ions;
  config.drive = run.drive;
  config.motion = run.motion;
  config.noise = run.noise;
  config.validate();
  return config;
}

SensitivityParams sensitivity_params(const RunConfig& run) {
  SensitivityParams params;
  params.f = run.drive.f;
  params.g = run.drive.g;
  params.sigma = to_angular(run.noise.sigma_hz);
  params.gamma = run.drive.gamma;
  params.nbar = run.motion.nbar;
  params.r = run.motion.r;
  params.validate();
  return params;
}

SqueezeRunParams squeeze_params(const RunConfig& run) {
  SqueezeRunParams params;
  params.n_ions = run.trap.n_ions;
  params.f = run.drive.f;
  params.g = run.drive.g;
  params.delta = run.drive.delta;
  params.rates = run.squeeze.rates;
  params.nbar = run.motion.nbar;
  params.noise = run.noise;
  params.single_loop = run.squeeze.single_loop;
  params.average_moments = run.squeeze.average_mode == "moments";
  params.validate();
  return params;
}

std::vector<double> phase_grid(const ScanSettings& scan) {
  scan.validate();
  std::vector<double> grid(static_cast<std::size_t>(scan.n_points));
  const double step =
      (scan.phase_hi_rad - scan.phase_lo_rad) / (scan.n_points - 1);
  for (int i = 0; i < scan.n_points; ++i)
    grid[static_cast<std::size_t>(i)] = scan.phase_lo_rad + step * i;
  grid.back() = scan.phase_hi_rad;
  return grid;
}

std::vector<double> delta_grid_hz(const ScanSettings& scan) {
  scan.validate();
  std::vector<double> grid(static_cast<std::size_t>(scan.n_points));
  const double step = (scan.delta_hi_hz - scan.delta_lo_hz) / (scan.n_points - 1);
  for (int i = 0; i < scan.n_points; ++i)
    grid[static_cast<std::size_t>(i)] = scan.delta_lo_hz + step * i;
  grid.back() = scan.delta_hi_hz;
  return grid;
}

std::vector<double> delta_grid_rad_s(const ScanSettings& scan) {
  std::vector<double> grid = delta_grid_hz(scan);
  for (double& value : grid) value = to_angular(value);
  return grid;
}

std::vector<double> tau_grid(const ScanSettings& scan) {
  scan.validate();
  if (scan.tau_log) return log_grid(scan.tau_lo_s, scan.tau_hi_s, scan.n_points);
  std::vector<double> grid(static_cast<std::size_t>(scan.n_points));
  const double step = (scan.tau_hi_s - scan.tau_lo_s) / (scan.n_points - 1);
  for (int i = 0; i < scan.n_points; ++i)
    grid[static_cast<std::size_t>(i)] = scan.tau_lo_s + step * i;
  grid.back() = scan.tau_hi_s;
  return grid;
}

}  // namespace squeezeion::io
