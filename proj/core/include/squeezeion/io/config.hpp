#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "squeezeion/continuous.hpp"
#include "squeezeion/sensing.hpp"
#include "squeezeion/spin_squeezing.hpp"
#include "squeezeion/stroboscopic.hpp"
#include "squeezeion/types.hpp"
#include "squeezeion/units.hpp"

namespace squeezeion::io {

// Grid controls shared by the scanning subcommands. Phases scan linearly
// (inclusive endpoints), detunings scan linearly in ordinary hertz, and
// interrogation times scan logarithmically unless tau_log is cleared.
struct ScanSettings {
  int n_points{101};
  double phase_lo_rad{0.0};
  double phase_hi_rad{two_pi};
  double delta_lo_hz{100.0};
  double delta_hi_hz{5000.0};
  double tau_lo_s{1e-5};
  double tau_hi_s{1e-2};
  bool tau_log{true};

  void validate() const;  // throws config-error
};

struct SqueezeSettings {
  DecoherenceRates rates;
  bool single_loop{true};
  std::string average_mode{"xi2"};  // "xi2" | "moments"
};

struct FitSettings {
  std::string data_csv;          // input table path (CLI --in overrides)
  double nbar_uncertainty{0.0};  // propagated through the phase-scan refit
};

struct ExtractSettings {
  double delta_hz{0.0};  // measured decoupling detuning
  double tau_s{0.0};     // arm time of the measurement
  int k{1};              // loop index
};

struct CalibrationSettings {
  std::string data_csv;       // columns: voltage_v, g_hz, tau_s
  bool fit_intercept{false};
};

// One fully parsed run file. Frequencies arrive in the unit stated by each key
// name and are converted to the library's internal angular-rate convention
// here, exactly once.
struct RunConfig {
  TrapParams trap;
  DriveParams drive;  // delta/g already converted from the *_hz keys to rad/s
  MotionalState motion;
  NoiseModel noise;
  ScanSettings scan;
  SqueezeSettings squeeze;
  FitSettings fit;
  ExtractSettings extract;
  CalibrationSettings calibration;
  std::uint64_t hash{};  // FNV-1a fingerprint of the canonical serialized form
};

// Parse a run file (JSON with // comments allowed). Unknown keys anywhere are
// rejected; every value is type-checked; the trap/drive/motion/noise sections
// are validated. Throws config-error.
RunConfig parse_run_config(const std::string& json_text);

// read_text_file + parse_run_config.
RunConfig load_run_config(const std::string& path);

// Assemble per-protocol parameter structs from a parsed run file.
StroboConfig strobo_config(const RunConfig& run);
ContinuousConfig continuous_config(const RunConfig& run);
SensitivityParams sensitivity_params(const RunConfig& run);
SqueezeRunParams squeeze_params(const RunConfig& run);

// Scan grids derived from the scan settings.
std::vector<double> phase_grid(const ScanSettings& scan);        // rad
std::vector<double> delta_grid_hz(const ScanSettings& scan);     // ordinary Hz
std::vector<double> delta_grid_rad_s(const ScanSettings& scan);  // rad/s
std::vector<double> tau_grid(const ScanSettings& scan);          // s

}  // namespace squeezeion::io
