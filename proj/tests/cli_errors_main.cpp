// Black-box error-path tests for the CLI: every entry writes a config (or
// input table), invokes the binary, and checks both the exit code and the
// machine-parsable error tag on stderr.
//
// Usage: cli_errors_test <path-to-cli> <scratch-dir>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code{-1};
  std::string stderr_text;
};

std::string g_cli;
fs::path g_scratch;
int g_failures = 0;
int g_case_index = 0;

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

RunResult run_cli(const std::string& args) {
  const fs::path err_path = g_scratch / ("stderr_" + std::to_string(g_case_index));
  const fs::path out_path = g_scratch / ("stdout_" + std::to_string(g_case_index));
  const std::string command = g_cli + " " + args + " >" + out_path.string() +
                              " 2>" + err_path.string();
  const int status = std::system(command.c_str());
  RunResult result;
  if (WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);
  result.stderr_text = read_file(err_path);
  return result;
}

void expect(const std::string& label, const std::string& args, int want_code,
            const std::string& want_tag) {
  ++g_case_index;
  const RunResult r = run_cli(args);
  const bool code_ok = r.exit_code == want_code;
  const bool tag_ok =
      want_tag.empty() || r.stderr_text.find(want_tag) != std::string::npos;
  if (code_ok && tag_ok) {
    std::printf("ok   %-38s exit=%d tag=%s\n", label.c_str(), r.exit_code,
                want_tag.empty() ? "-" : want_tag.c_str());
  } else {
    ++g_failures;
    std::printf("FAIL %-38s want exit=%d tag='%s', got exit=%d stderr='%s'\n",
                label.c_str(), want_code, want_tag.c_str(), r.exit_code,
                r.stderr_text.c_str());
  }
}

fs::path config(const std::string& name, const std::string& json) {
  const fs::path path = g_scratch / name;
  write_file(path, json);
  return path;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: cli_errors_test <cli> <scratch-dir>\n";
    return 2;
  }
  g_cli = argv[1];
  g_scratch = argv[2];
  fs::create_directories(g_scratch);

  const fs::path ok = config("ok.json", "{}");

  expect("malformed json", "strobo-scan --config " +
             config("bad_syntax.json", "{ not json").string(),
         2, "config-error");

  expect("unknown key", "strobo-scan --config " +
             config("bad_key.json", R"({"drive": {"f_rad_s": 10.0}})").string(),
         2, "config-error");

  expect("negative arm time", "strobo-scan --config " +
             config("bad_tau.json", R"({"drive": {"tau_s": -0.001}})").string(),
         2, "config-error");

  expect("missing config file",
         "strobo-scan --config " + (g_scratch / "nope.json").string(), 2,
         "config-error");

  expect("no subcommand", "--config " + ok.string(), 2, "config-error");

  // fit-strobo: input table lacks the bright_fraction column.
  write_file(g_scratch / "bad_cols.csv", "delta_phi_rad,intensity\n0,0.1\n");
  expect("fit input missing column",
         "fit-strobo --config " + ok.string() + " --in " +
             (g_scratch / "bad_cols.csv").string(),
         2, "io-error");

  // fit-strobo: no input table configured anywhere.
  expect("fit input unset", "fit-strobo --config " + ok.string(), 2,
         "config-error");

  // fit-strobo: seven points cannot constrain the model.
  write_file(g_scratch / "short.csv",
             "delta_phi_rad,bright_fraction\n0,0.1\n1,0.2\n2,0.3\n3,0.2\n"
             "4,0.1\n5,0.2\n6,0.3\n");
  expect("fit with too few points",
         "fit-strobo --config " +
             config("fit_few.json",
                    R"({"drive": {"f_hz": 600}, "motion": {"nbar": 0.3}})")
                 .string() +
             " --in " + (g_scratch / "short.csv").string(),
         3, "fit-failure");

  // fit-decouple: flat scan carries no information.
  {
    std::string csv = "delta_hz,bright_fraction\n";
    for (int i = 0; i < 30; ++i)
      csv += std::to_string(300 + 100 * i) + ",0.5\n";
    write_file(g_scratch / "flat.csv", csv);
  }
  expect("thermometry fit on flat data",
         "fit-decouple --config " +
             config("fit_flat.json",
                    R"({"trap": {"n_ions": 86},
                        "drive": {"f_hz": 1000, "tau_s": 0.001, "t_pi_s": 5e-5}})")
                 .string() +
             " --in " + (g_scratch / "flat.csv").string(),
         3, "fit-failure");

  // decouple-scan: the whole window sits below the instability threshold.
  expect("scan inside the unstable regime",
         "decouple-scan --config " +
             config("unstable.json",
                    R"({"drive": {"f_hz": 300, "tau_s": 0.001, "g_hz": 5000},
                        "scan": {"n_points": 5, "delta_lo_hz": 600,
                                  "delta_hi_hz": 2000}})")
                 .string(),
         2, "unstable-regime");

  // decouple-scan: detuning hugs the threshold, noise pushes draws across.
  expect("noise rejection over the ceiling",
         "decouple-scan --config " +
             config("rejected.json",
                    R"({"drive": {"f_hz": 300, "tau_s": 0.001, "g_hz": 1000},
                        "noise": {"sigma_hz": 40, "n_samples": 400, "seed": 5},
                        "scan": {"n_points": 4, "delta_lo_hz": 1010,
                                  "delta_hi_hz": 2500}})")
                 .string(),
         2, "rejected-fraction");

  // extract-g: measured detuning below the bare decoupling frequency.
  expect("extraction below the bare detuning",
         "extract-g --config " +
             config("extract_low.json",
                    R"({"extract": {"delta_hz": 900.0, "tau_s": 0.001, "k": 1}})")
                 .string(),
         2, "domain-error");

  expect("extraction without settings", "extract-g --config " + ok.string(), 2,
         "config-error");

  // fit-gv: no voltage variation in the calibration table.
  write_file(g_scratch / "same_v.csv", "voltage_v,g_hz,tau_s\n12,100,0.001\n12,120,0.001\n");
  expect("degenerate calibration design",
         "fit-gv --config " +
             config("gv.json",
                    R"({"calibration": {"fit_intercept": true}})").string() +
             " --in " + (g_scratch / "same_v.csv").string(),
         2, "degenerate-design");

  // sensitivity: amplified protocol with noise needs a parametric rate.
  expect("noise without a parametric drive",
         "sensitivity --config " +
             config("sens.json",
                    R"({"drive": {"f_hz": 1700, "gamma_per_s": 60},
                        "motion": {"nbar": 0.38, "r": 1.25},
                        "noise": {"sigma_hz": 40}})")
                 .string(),
         2, "domain-error");

  // spin-squeeze: average mode typo.
  expect("invalid average mode",
         "spin-squeeze --config " +
             config("mode.json",
                    R"({"trap": {"n_ions": 10}, "drive": {"f_hz": 500},
                        "squeeze": {"average_mode": "median"}})")
                 .string(),
         2, "config-error");

  expect("unknown oracle check", "oracle-check --name bogus", 2,
         "config-error");

  // --samples must be positive.
  expect("non-positive sample override",
         "spin-squeeze --config " + ok.string() + " --samples 0", 2,
         "config-error");

  std::printf("%d case(s) failed\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
