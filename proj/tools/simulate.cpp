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


// simulate <config-path> [--out DIR] [--seed N] [--threads N]
//
// Exit codes: 0 success, 1 configuration error, 2 runtime error.
// The thread count falls back to QCROSS_THREADS, then to the config.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "qcross/qcross.h"

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

int report(const char* stage, int code) {
  std::fprintf(stderr, "simulate: %s: %s\n", stage, qcross_last_error());
  return code;
}

std::optional<int> threads_from_env() {
  const char* raw = std::getenv("QCROSS_THREADS");
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  char* end = nullptr;
  const long value = std::strtol(raw, &end, 10);
  if (*end != '\0' || value < 0 || value > 4096) {
    throw CLI::ValidationError("QCROSS_THREADS",
                               "must be a non-negative integer, got '" +
                                   std::string(raw) + "'");
  }
  return static_cast<int>(value);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulate a qubit coupled to a driven, damped field mode"};
  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  app.add_option("config", config_path,
                 "Scenario config, or a result file with an embedded config")
      ->required();
  app.add_option("--out", out_dir, "Output directory")->capture_default_str();
  app.add_option("--seed", seed, "Override the config seed");
  app.add_option("--threads", threads, "Worker threads (0 = all cores)")
      ->check(CLI::NonNegativeNumber);

  std::optional<int> env_threads;
  try {
    app.parse(argc, argv);
    env_threads = threads_from_env();
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  qcross_scenario* scenario = nullptr;
  if (qcross_scenario_load(config_path.c_str(), &scenario) != QCROSS_OK) {
    return report("config error", kExitConfig);
  }
  if (seed) qcross_scenario_set_seed(scenario, *seed);
  if (threads) {
    qcross_scenario_set_threads(scenario, *threads);
  } else if (env_threads) {
    qcross_scenario_set_threads(scenario, *env_threads);
  }

  const qcross_status status = qcross_scenario_run(scenario, out_dir.c_str());
  qcross_scenario_free(scenario);
  if (status != QCROSS_OK) return report("run failed", kExitRuntime);
  std::printf("outputs written to %s\n", out_dir.c_str());
  return 0;
}
