// Copyright 2026 The qcross Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "core/errors.hpp"
#include "core/scenario.hpp"
#include "doctest.h"

using namespace qcross;
namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("qcross_test_scenario_" + name);
  fs::remove_all(dir);
  return dir;
}

ErrorKind failure_kind(std::string_view text, std::string* subject = nullptr,
                       int* line = nullptr) {
  try {
    parse_config(text);
  } catch (const Error& e) {
    if (subject) *subject = e.subject();
    if (line) *line = e.line();
    return e.kind();
  }
  FAIL("expected a configuration error");
  return ErrorKind::InvalidArgument;
}

// Rows of a CSV file, skipping comment and header lines.
std::vector<std::vector<double>> csv_rows(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream lines(text);
  for (std::string line; std::getline(lines, line);) {
    if (line.empty() || line[0] == '#' || line.rfind("omega_t", 0) == 0) continue;
    std::vector<double> row;
    std::istringstream cells(line);
    for (std::string cell; std::getline(cells, cell, ',');) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST_CASE("minimal config resolves derived defaults") {
  const ScenarioConfig c = parse_config("mode = qsd\n");
  CHECK(c.n_max == 54);
  CHECK(c.integrator.dt == doctest::Approx(0.0015));
  CHECK(c.params.lambda == 1.0);
  CHECK(c.integrator.t_end == doctest::Approx(1.25 * 2.0 * 3.14159265358979 * std::sqrt(15.0)));
  CHECK(c.integrator.sample_stride >= 1);

  const ScenarioConfig r = parse_config("mode = rabi-analytic\n");
  CHECK(r.params.nu == 8.0);
}

TEST_CASE("value grammar") {
  const ScenarioConfig c = parse_config(
      "# comment line\n"
      "mode = master   # trailing\n"
      "alpha = 1.5-0.5i\n"
      "lambda_over_omega = sqrt(0.25)\n"
      "gamma_over_omega = 1e-2\n"
      "n_max = 12\n"
      "leakage_tol = 1e-3\n"
      "t_end = 1\n");
  CHECK(c.params.alpha == Complex(1.5, -0.5));
  CHECK(c.params.lambda == 0.5);
  CHECK(c.params.gamma == 0.01);
  CHECK(parse_config("mode = qsd\nalpha = sqrt(15)i\n").params.alpha ==
        Complex(0.0, std::sqrt(15.0)));
}

TEST_CASE("parse and validation errors name the offending key") {
  std::string subject;
  int line = 0;
  CHECK(failure_kind("mode = qsd\nbogus_key = 1\n", &subject, &line) == ErrorKind::ParseError);
  CHECK(subject == "bogus_key");
  CHECK(line == 2);
  CHECK(failure_kind("mode = qsd\nmode = master\n", &subject, &line) == ErrorKind::ParseError);
  CHECK(line == 2);
  CHECK(failure_kind("mode qsd\n") == ErrorKind::ParseError);
  CHECK(failure_kind("mode = qsd\ndt = fast\n", &subject) == ErrorKind::ParseError);
  CHECK(subject == "dt");
  CHECK(failure_kind("lambda_over_omega = 1\n", &subject) == ErrorKind::ValidationError);
  CHECK(subject == "mode");

  CHECK(failure_kind("mode = master\nnu_over_omega = 8\n", &subject) ==
        ErrorKind::ValidationError);
  CHECK(subject == "nu_over_omega");
  CHECK(failure_kind("mode = qsd\nn_traj = 5\n", &subject) == ErrorKind::ValidationError);
  CHECK(subject == "n_traj");
  CHECK(failure_kind("mode = schrodinger\ngamma_over_omega = 0.1\n", &subject) ==
        ErrorKind::ValidationError);
  CHECK(failure_kind("mode = jc-analytic\nomega0_over_omega = 1.2\n") ==
        ErrorKind::ValidationError);
  CHECK(failure_kind("mode = master\nscheme = euler-maruyama\n", &subject) == ErrorKind::ValidationError);
  CHECK(subject == "scheme");
  failure_kind("mode = qsd\nsweep =\n", &subject);
  CHECK(subject == "sweep");
  CHECK(failure_kind("mode = qsd\nn_max = 10\n", &subject) == ErrorKind::ValidationError);
  CHECK(subject == "n_max");
  CHECK(failure_kind("mode = rabi-analytic\nwigner_dir = w\n", &subject) ==
        ErrorKind::ValidationError);
  CHECK(subject == "wigner_dir");
}

TEST_CASE("classical-field CSV reproduces cos(nu t)") {
  const ScenarioConfig c = parse_config("mode = rabi-analytic\nt_end = 10\ndt = 0.01\n");
  const ScenarioResult r = execute(c);
  const std::string text = csv_text(c, r.series);
  CHECK(text.find("omega_t, sigma_z, entropy_nats, photon_number, norm_error\n") !=
        std::string::npos);
  const auto rows = csv_rows(text);
  CHECK(rows.size() == 1001);
  for (const auto& row : rows) {
    REQUIRE(row.size() == 5);
    CHECK(std::abs(row[1] - std::cos(8.0 * row[0])) <= 1e-12);
  }
}

TEST_CASE("number formatting round-trips") {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0}) {
    CHECK(std::stod(format_number(v)) == v);
  }
}

TEST_CASE("runs are reproducible and replayable from the output header") {
  const std::string text =
      "mode = qsd\ngamma_over_omega = 0.05\nalpha = 1\nlambda_over_omega = 0.3\n"
      "n_max = 12\nleakage_tol = 1e-6\nt_end = 3\nseed = 11\n"
      "wigner_dir = frames\nframe_stride = 50\nwigner_resolution = 21\n";
  const ScenarioConfig c = parse_config(text);
  const fs::path a = scratch("a"), b = scratch("b"), replay = scratch("replay");
  run_scenario(c, a);
  run_scenario(parse_config(text), b);
  const std::string csv = read_file(a / "series.csv");
  CHECK(csv == read_file(b / "series.csv"));
  CHECK(fs::exists(a / "frames"));
  std::size_t frames = 0;
  for (const auto& entry : fs::directory_iterator(a / "frames")) {
    CHECK(read_file(entry.path()) == read_file(b / "frames" / entry.path().filename()));
    ++frames;
  }
  CHECK(frames >= 2);

  const ScenarioConfig again = parse_config(csv);
  CHECK(resolved_text(again) == resolved_text(c));
  run_scenario(again, replay);
  CHECK(read_file(replay / "series.csv") == csv);

  ScenarioConfig reseeded = c;
  reseeded.seed = 12;
  CHECK(csv_text(reseeded, execute(reseeded).series) != csv);
}

TEST_CASE("threads setting is not echoed and does not change results") {
  const std::string text =
      "mode = qsd-ensemble\ngamma_over_omega = 0.05\nalpha = 1\nlambda_over_omega = 0.3\n"
      "n_max = 10\nleakage_tol = 1e-5\nt_end = 1\nn_traj = 6\nseed = 3\n";
  ScenarioConfig one = parse_config(text + "threads = 1\n");
  ScenarioConfig many = parse_config(text + "threads = 3\n");
  CHECK(resolved_text(one).find("threads") == std::string::npos);
  const std::string a = csv_text(one, execute(one).series);
  CHECK(a == csv_text(many, execute(many).series));
  CHECK(a.find("sigma_z_stderr") != std::string::npos);
}

TEST_CASE("feature report for the analytic quantum-limit run") {
  const ScenarioConfig c = parse_config("mode = jc-analytic\n");
  const fs::path dir = scratch("features");
  const RunArtifacts a = run_scenario(c, dir);
  REQUIRE(a.features.has_value());
  CHECK(a.features->collapse);
  CHECK(a.features->revival);
  CHECK(a.features->attractor_dip);
  const std::string f = read_file(dir / "features.txt");
  CHECK(f.find("regime = Quantum") != std::string::npos);
  CHECK(f.find("revival = true") != std::string::npos);
}

TEST_CASE("gamma sweep writes one directory per entry and a summary") {
  const std::string text =
      "mode = master\nalpha = 1\nlambda_over_omega = 0.3\nn_max = 10\nleakage_tol = 1e-5\n"
      "t_end = 2\nsweep = 0, 0.01, 0.1\n";
  const ScenarioConfig c = parse_config(text);
  const fs::path dir = scratch("sweep");
  const auto entries = run_sweep(c, dir);
  REQUIRE(entries.size() == 3);
  for (const SweepEntry& e : entries) {
    CHECK(e.status == "ok");
    CHECK(fs::exists(dir / e.directory / "series.csv"));
    CHECK(e.regime.has_value());
  }
  CHECK(entries[0].regime == Regime::Quantum);
  const std::string summary = read_file(dir / "sweep_summary.csv");
  CHECK(summary.find("gamma_over_omega, regime") != std::string::npos);
  CHECK(std::count(summary.begin(), summary.end(), '\n') > 3);

  const ScenarioConfig bad = parse_config(
      "mode = qsd\nalpha = 3\nlambda_over_omega = 0.3\nn_max = 40\nt_end = 1\n"
      "scheme = euler-maruyama\ndt = 0.1\nsweep = 0.01\n");
  CHECK_THROWS_AS(run_scenario(bad, scratch("sweep_bad")), Error);
}

TEST_CASE("default sweep") {
  const std::vector<double> g = default_sweep();
  CHECK(g.front() == 0.0);
  CHECK(std::is_sorted(g.begin(), g.end()));
  const ScenarioConfig c = parse_config("mode = master\nsweep = default\n");
  CHECK(c.sweep == g);
}

TEST_CASE("config files load from disk") {
  const fs::path dir = scratch("load");
  fs::create_directories(dir);
  {
    std::ofstream out(dir / "c.cfg");
    out << "mode = rabi-analytic\nt_end = 1\n";
  }
  CHECK(load_config(dir / "c.cfg").mode == Mode::RabiAnalytic);
  try {
    load_config(dir / "missing.cfg");
    FAIL("expected IoError");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::IoError);
  }
}

TEST_CASE("shipped example configs are valid") {
  std::size_t count = 0;
  for (const auto& entry : fs::directory_iterator(QCROSS_CONFIG_DIR)) {
    if (entry.path().extension() != ".cfg") continue;
    CAPTURE(entry.path().string());
    CHECK_NOTHROW(load_config(entry.path()));
    ++count;
  }
  CHECK(count >= 5);
}
