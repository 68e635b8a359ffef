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

#pragma once

// Declarative scenarios: flat key = value configuration, execution of one
// run or a gamma sweep, and serialization of CSV series, Wigner frames and
// feature reports.
//
// Config grammar (one entry per line):
//
//   line    := blank | comment | entry
//   comment := '#' anything
//   entry   := key '=' value [ comment ]
//
// Keys are listed in the README. Numbers are parsed locale-independently;
// real values also accept sqrt(x), and alpha accepts complex forms such as
// "1.5-0.5i" or "sqrt(15)i".

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "core/analysis.hpp"
#include "core/dynamics.hpp"
#include "core/models.hpp"
#include "core/observables.hpp"

namespace qcross {

enum class Mode { RabiAnalytic, JcAnalytic, Schrodinger, Master, Qsd, QsdEnsemble };
enum class AnalysisMode { Auto, On, Off };

const char* to_string(Mode mode) noexcept;

struct OutputConfig {
  std::string csv = "series.csv";
  std::string wigner_dir;  // empty: no frames
  int frame_stride = 0;    // in samples; 0 until resolved
  GridSpec grid;
};

struct ScenarioConfig {
  Mode mode = Mode::Qsd;
  SystemParams params{.lambda = 1.0, .alpha = Complex(3.872983346207417, 0.0)};
  bool qubit_up = true;
  int n_max = 0;  // 0 until resolved
  double leakage_tol = FockCutoff::kDefaultLeakageTolerance;
  IntegratorConfig integrator;
  int n_traj = 100;
  std::uint64_t seed = 0;
  int threads = 0;  // 0 = hardware concurrency; never echoed
  OutputConfig outputs;
  AnalysisMode analysis = AnalysisMode::Auto;
  FeatureThresholds thresholds;
  double regime_margin = 10.0;
  std::vector<double> sweep;
  bool has_sweep = false;

  // Keys given explicitly; everything else is derived by resolve_defaults.
  std::set<std::string> explicit_keys;

  bool is_explicit(std::string_view key) const {
    return explicit_keys.count(std::string(key)) > 0;
  }
  FockCutoff cutoff() const { return FockCutoff(n_max, leakage_tol); }
};

// Default gamma grid (units of omega) spanning the quantum to classical
// labels at n = 50, lambda / omega = 5e-4.
std::vector<double> default_sweep();

// Fills every derived value that was not set explicitly.
void resolve_defaults(ScenarioConfig& cfg);

// Mode-specific and range checks; throws ValidationError naming the key.
void validate(const ScenarioConfig& cfg);

// Parses, resolves and validates. Text that starts with a result-file header
// ("# qcross simulate" ... "# end-config") is read from that header.
ScenarioConfig parse_config(std::string_view text);
ScenarioConfig load_config(const std::filesystem::path& path);

// Canonical "key = value" lines for a resolved config (no comment prefix).
std::string resolved_text(const ScenarioConfig& cfg);

struct WignerFrame {
  std::size_t sample;
  double time;
  WignerGrid grid;
};

struct ScenarioResult {
  // omega_t axis plus sigma_z, entropy_nats, photon_number, norm_error and,
  // for ensembles, sigma_z_stderr.
  TimeSeries series;
  std::vector<WignerFrame> frames;
  std::optional<FeatureReport> features;
  std::optional<Regime> regime;
};

// Runs the scenario in memory (ignores the sweep list).
ScenarioResult execute(const ScenarioConfig& cfg);

struct RunArtifacts {
  std::vector<std::filesystem::path> files;
  std::optional<FeatureReport> features;
};

// Runs and writes artifacts under out_dir (created if needed). With a sweep
// list this delegates to run_sweep.
RunArtifacts run_scenario(const ScenarioConfig& cfg,
                          const std::filesystem::path& out_dir);

struct SweepEntry {
  double gamma;
  std::string directory;
  std::optional<Regime> regime;
  std::optional<FeatureReport> features;
  std::string status;  // "ok" or the error message
};

// One subdirectory per gamma plus sweep_summary.csv. A failing entry is
// recorded and the sweep continues.
std::vector<SweepEntry> run_sweep(const ScenarioConfig& cfg,
                                  const std::filesystem::path& out_dir);

// Serializers (exposed for tests).
std::string format_number(double value);  // 17 significant digits
std::string config_header(const ScenarioConfig& cfg);
std::string csv_text(const ScenarioConfig& cfg, const TimeSeries& series);
std::string frame_text(const ScenarioConfig& cfg, const WignerFrame& frame);
std::string feature_text(const ScenarioConfig& cfg, const ScenarioResult& result);

}  // namespace qcross
