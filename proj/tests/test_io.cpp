#include <doctest.h>

#include <cstdio>
#include <string>
#include <vector>

#include "squeezeion/errors.hpp"
#include "squeezeion/io/config.hpp"
#include "squeezeion/io/csv.hpp"
#include "squeezeion/units.hpp"

using namespace squeezeion;
using squeezeion::io::Table;

TEST_CASE("table validation rejects ragged rows") {
  Table table;
  table.columns = {"a", "b"};
  table.rows = {{1.0, 2.0}, {3.0}};
  CHECK_THROWS_AS(table.validate(), error);
}

TEST_CASE("csv round trips bitwise") {
  Table table;
  table.columns = {"x", "y", "z"};
  table.rows = {{0.0, -0.0, 1.5},
                {0.1, 1e300, -2.5e-7},
                {1.0 / 3.0, 12345.6789, 5e-324}};
  const std::string text = io::to_csv(table);
  const Table back = io::parse_csv(text);
  REQUIRE(back.columns == table.columns);
  REQUIRE(back.rows.size() == table.rows.size());
  for (std::size_t i = 0; i < table.rows.size(); ++i)
    for (std::size_t j = 0; j < table.columns.size(); ++j)
      CHECK(back.rows[i][j] == table.rows[i][j]);
  // Serialization itself is reproducible.
  CHECK(io::to_csv(back) == text);
}

TEST_CASE("csv handles headers, comments, and line endings") {
  const Table empty = io::parse_csv("a,b\n");
  CHECK(empty.columns == std::vector<std::string>{"a", "b"});
  CHECK(empty.rows.empty());
  const Table commented = io::parse_csv("a,b\n# note\n1,2\r\n3,4\n");
  REQUIRE(commented.rows.size() == 2);
  CHECK(commented.rows[1][1] == 4.0);
}

TEST_CASE("csv reports malformed input with a line number") {
  CHECK_THROWS_AS(io::parse_csv("a,b\n1\n"), error);          // short row
  CHECK_THROWS_AS(io::parse_csv("a,b\n1,2,3\n"), error);      // long row
  CHECK_THROWS_AS(io::parse_csv("a,b\n1,zebra\n"), error);    // non-numeric
  CHECK_THROWS_AS(io::parse_csv(""), error);                  // no header
  try {
    io::parse_csv("a,b\n1,2\n1,zebra\n");
  } catch (const error& e) {
    CHECK(e.code() == errc::io_error);
    CHECK(std::string(e.what()).find("3") != std::string::npos);
  }
}

TEST_CASE("column lookup") {
  Table table;
  table.columns = {"delta_hz", "bright_fraction"};
  CHECK(io::column_index(table, "bright_fraction") == 1);
  CHECK_THROWS_AS(io::column_index(table, "missing"), error);
}

TEST_CASE("text file round trip and missing-file error") {
  const std::string path = "io_test_scratch.txt";
  io::write_text_file(path, "line1\nline2");
  CHECK(io::read_text_file(path) == "line1\nline2");
  std::remove(path.c_str());
  CHECK_THROWS_AS(io::read_text_file("definitely/not/here.txt"), error);
  try {
    io::read_text_file("definitely/not/here.txt");
  } catch (const error& e) {
    CHECK(e.code() == errc::io_error);
  }
}

TEST_CASE("run config defaults") {
  const io::RunConfig run = io::parse_run_config("{}");
  CHECK(run.trap.omega_z_hz == 1.59e6);
  CHECK(run.trap.n_ions == 1);
  CHECK(run.drive.tau == 1e-3);
  CHECK(run.drive.f == 0.0);
  CHECK(run.motion.nbar == 0.0);
  CHECK(run.noise.sigma_hz == 0.0);
  CHECK(run.noise.n_samples == 1);
  CHECK(run.scan.n_points == 101);
  CHECK(run.scan.tau_log);
  CHECK(run.squeeze.average_mode == "xi2");
}

TEST_CASE("run config converts every frequency key from hertz once") {
  const io::RunConfig run = io::parse_run_config(R"({
    "drive": {"f_hz": 100.0, "delta_hz": 830.0, "g_hz": 4000.0},
    "noise": {"sigma_hz": 40.0}
  })");
  CHECK(run.drive.f == to_angular(100.0));
  CHECK(run.drive.delta == to_angular(830.0));
  CHECK(run.drive.g == to_angular(4000.0));
  // sigma stays in Hz inside NoiseModel; the builders convert at the edge.
  CHECK(run.noise.sigma_hz == 40.0);
  const SensitivityParams p = io::sensitivity_params([&] {
    io::RunConfig r = run;
    r.drive.f = to_angular(1700.0);
    r.motion.r = 1.25;
    return r;
  }());
  CHECK(p.sigma == to_angular(40.0));
}

TEST_CASE("run config accepts comments and rejects unknown keys") {
  CHECK_NOTHROW(io::parse_run_config("{ // comment\n \"motion\": {\"nbar\": 1.0} }"));
  CHECK_THROWS_AS(io::parse_run_config(R"({"bogus": 1})"), error);
  CHECK_THROWS_AS(io::parse_run_config(R"({"trap": {"bogus": 1}})"), error);
  CHECK_THROWS_AS(io::parse_run_config(R"({"drive": {"f_rad_s": 10.0}})"), error);
  CHECK_THROWS_AS(io::parse_run_config(R"({"squeeze": {"rates": {}}})"), error);
  try {
    io::parse_run_config(R"({"drive": {"f_rad_s": 10.0}})");
  } catch (const error& e) {
    CHECK(e.code() == errc::config_error);
    CHECK(std::string(e.what()).find("drive.f_rad_s") != std::string::npos);
  }
}

TEST_CASE("run config type and range errors") {
  CHECK_THROWS_AS(io::parse_run_config(R"({"drive": {"f_hz": "fast"}})"), error);
  CHECK_THROWS_AS(io::parse_run_config(R"({"scan": {"n_points": 2.5}})"), error);
  CHECK_THROWS_AS(io::parse_run_config(R"({"noise": {"seed": -4}})"), error);
  CHECK_THROWS_AS(io::parse_run_config(R"({"drive": {"tau_s": -1.0}})"), error);
  CHECK_THROWS_AS(io::parse_run_config(R"({"motion": {"nbar": -2.0}})"), error);
  CHECK_THROWS_AS(
      io::parse_run_config(R"({"squeeze": {"average_mode": "bogus"}})"), error);
  CHECK_THROWS_AS(io::parse_run_config(R"({"fit": {"nbar_uncertainty": -0.1}})"),
                  error);
  CHECK_THROWS_AS(io::parse_run_config("not json"), error);
  CHECK_THROWS_AS(
      io::parse_run_config(R"({"scan": {"delta_lo_hz": 500.0, "delta_hi_hz": 100.0}})"),
      error);
}

TEST_CASE("config hash is canonical") {
  const auto a = io::parse_run_config(R"({"motion": {"nbar": 1.0, "r": 0.5}})");
  const auto b =
      io::parse_run_config("{ \"motion\": { // reordered & commented\n"
                           "  \"r\": 0.5, \"nbar\": 1.0 } }");
  CHECK(a.hash == b.hash);
  const auto c = io::parse_run_config(R"({"motion": {"nbar": 1.0, "r": 0.6}})");
  CHECK(c.hash != a.hash);
}

TEST_CASE("protocol builders wire the parsed sections through") {
  const io::RunConfig run = io::parse_run_config(R"({
    "trap": {"n_ions": 86},
    "drive": {"f_hz": 5092.958178940651, "tau_s": 0.0005, "gamma_per_s": 12.0},
    "motion": {"nbar": 0.38, "r": 1.25, "beta_re": 0.5, "beta_im": -0.25},
    "squeeze": {"gamma_ud_per_s": 16.0, "gamma_du_per_s": 16.0,
                 "gamma_el_per_s": 55.0, "average_mode": "moments"}
  })");
  const StroboConfig strobo = io::strobo_config(run);
  CHECK(strobo.n_ions == 86);
  CHECK(strobo.f == to_angular(5092.958178940651));
  CHECK(strobo.tau == 0.0005);
  CHECK(strobo.gamma == 12.0);
  CHECK(strobo.r == 1.25);
  CHECK(strobo.nbar == 0.38);

  const ContinuousConfig cont = io::continuous_config(run);
  CHECK(cont.n_ions == 86);
  CHECK(cont.motion.beta == cd(0.5, -0.25));

  const SqueezeRunParams squeeze = io::squeeze_params([&] {
    io::RunConfig r = run;
    r.trap.n_ions = 4;
    return r;
  }());
  CHECK(squeeze.n_ions == 4);
  CHECK(squeeze.rates.gamma_el == 55.0);
  CHECK(squeeze.average_moments);
  CHECK(squeeze.single_loop);
}

TEST_CASE("scan grids honor their settings") {
  io::ScanSettings scan;
  scan.n_points = 5;
  scan.phase_lo_rad = 0.0;
  scan.phase_hi_rad = two_pi;
  scan.delta_lo_hz = 200.0;
  scan.delta_hi_hz = 4800.0;
  scan.tau_lo_s = 1e-5;
  scan.tau_hi_s = 1e-2;

  const auto phases = io::phase_grid(scan);
  REQUIRE(phases.size() == 5);
  CHECK(phases.front() == 0.0);
  CHECK(phases.back() == two_pi);
  CHECK(phases[2] == doctest::Approx(pi).epsilon(1e-15));

  const auto hz = io::delta_grid_hz(scan);
  const auto rad = io::delta_grid_rad_s(scan);
  REQUIRE(hz.size() == rad.size());
  CHECK(hz.front() == 200.0);
  CHECK(hz.back() == 4800.0);
  for (std::size_t i = 0; i < hz.size(); ++i)
    CHECK(rad[i] == to_angular(hz[i]));

  scan.tau_log = true;
  const auto logs = io::tau_grid(scan);
  CHECK(logs.front() == 1e-5);
  CHECK(logs.back() == 1e-2);
  CHECK(logs[1] / logs[0] == doctest::Approx(logs[2] / logs[1]).epsilon(1e-12));
  scan.tau_log = false;
  const auto lin = io::tau_grid(scan);
  CHECK(lin[1] - lin[0] == doctest::Approx(lin[2] - lin[1]).epsilon(1e-9));
}
