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


#include "qcross/qcross.h"

#include <cmath>
#include <exception>
#include <new>
#include <string>

#include "core/analysis.hpp"
#include "core/analytic.hpp"
#include "core/errors.hpp"
#include "core/scenario.hpp"

struct qcross_scenario {
  qcross::ScenarioConfig config;
  std::string resolved;
};

struct qcross_series {
  qcross::ScenarioResult result;
  std::vector<std::string> names;
};

namespace {

struct ErrorRecord {
  std::string message;
  std::string key;
  int line = 0;
};

thread_local ErrorRecord last_error;

qcross_status status_for(qcross::ErrorKind kind) {
  switch (kind) {
    case qcross::ErrorKind::ParseError: return QCROSS_ERR_PARSE;
    case qcross::ErrorKind::ValidationError: return QCROSS_ERR_VALIDATION;
    case qcross::ErrorKind::IoError: return QCROSS_ERR_IO;
    case qcross::ErrorKind::InvalidArgument:
    case qcross::ErrorKind::DimensionMismatch:
    case qcross::ErrorKind::DegenerateCoupling:
    case qcross::ErrorKind::TailTooLarge:
      return QCROSS_ERR_INVALID_ARGUMENT;
    default:
      return QCROSS_ERR_RUNTIME;
  }
}

qcross_status fail(qcross_status status, std::string message, std::string key = {},
                   int line = 0) {
  last_error = ErrorRecord{std::move(message), std::move(key), line};
  return status;
}

template <class Body>
qcross_status guarded(Body&& body) {
  try {
    body();
    return QCROSS_OK;
  } catch (const qcross::Error& e) {
    std::string message = e.what();
    if (e.line() > 0) message = "line " + std::to_string(e.line()) + ": " + message;
    return fail(status_for(e.kind()), std::move(message), e.subject(), e.line());
  } catch (const std::bad_alloc&) {
    return fail(QCROSS_ERR_RUNTIME, "out of memory");
  } catch (const std::exception& e) {
    return fail(QCROSS_ERR_RUNTIME, e.what());
  }
}

qcross::SystemParams jc_params(double lambda, double alpha_re, double alpha_im) {
  qcross::SystemParams p;
  p.lambda = lambda;
  p.alpha = qcross::Complex(alpha_re, alpha_im);
  return p;
}

}  // namespace

extern "C" {

const char* qcross_version(void) { return "0.1.0"; }

const char* qcross_last_error(void) { return last_error.message.c_str(); }
const char* qcross_last_error_key(void) { return last_error.key.c_str(); }
int qcross_last_error_line(void) { return last_error.line; }

qcross_status qcross_scenario_parse(const char* text, qcross_scenario** out) {
  if (text == nullptr || out == nullptr) {
    return fail(QCROSS_ERR_INVALID_ARGUMENT, "null argument");
  }
  *out = nullptr;
  return guarded([&] {
    auto* s = new qcross_scenario{qcross::parse_config(text), {}};
    *out = s;
  });
}

qcross_status qcross_scenario_load(const char* path, qcross_scenario** out) {
  if (path == nullptr || out == nullptr) {
    return fail(QCROSS_ERR_INVALID_ARGUMENT, "null argument");
  }
  *out = nullptr;
  return guarded([&] {
    auto* s = new qcross_scenario{qcross::load_config(path), {}};
    *out = s;
  });
}

void qcross_scenario_free(qcross_scenario* scenario) { delete scenario; }

qcross_status qcross_scenario_set_seed(qcross_scenario* scenario, uint64_t seed) {
  if (scenario == nullptr) return fail(QCROSS_ERR_INVALID_ARGUMENT, "null scenario");
  scenario->config.seed = seed;
  scenario->config.explicit_keys.insert("seed");
  return QCROSS_OK;
}

qcross_status qcross_scenario_set_threads(qcross_scenario* scenario, int threads) {
  if (scenario == nullptr) return fail(QCROSS_ERR_INVALID_ARGUMENT, "null scenario");
  if (threads < 0) {
    return fail(QCROSS_ERR_INVALID_ARGUMENT, "threads must be >= 0", "threads");
  }
  scenario->config.threads = threads;
  return QCROSS_OK;
}

const char* qcross_scenario_resolved_text(qcross_scenario* scenario) {
  if (scenario == nullptr) return "";
  scenario->resolved = qcross::resolved_text(scenario->config);
  return scenario->resolved.c_str();
}

qcross_status qcross_scenario_run(const qcross_scenario* scenario,
                                  const char* out_dir) {
  if (scenario == nullptr || out_dir == nullptr) {
    return fail(QCROSS_ERR_INVALID_ARGUMENT, "null argument");
  }
  return guarded([&] { qcross::run_scenario(scenario->config, out_dir); });
}

qcross_status qcross_scenario_simulate(const qcross_scenario* scenario,
                                       qcross_series** out) {
  if (scenario == nullptr || out == nullptr) {
    return fail(QCROSS_ERR_INVALID_ARGUMENT, "null argument");
  }
  *out = nullptr;
  return guarded([&] {
    auto* s = new qcross_series{qcross::execute(scenario->config), {"omega_t"}};
    for (const std::string& n : s->result.series.names()) s->names.push_back(n);
    *out = s;
  });
}

void qcross_series_free(qcross_series* series) { delete series; }

size_t qcross_series_rows(const qcross_series* series) {
  return series == nullptr ? 0 : series->result.series.size();
}

size_t qcross_series_columns(const qcross_series* series) {
  return series == nullptr ? 0 : series->names.size();
}

const char* qcross_series_column_name(const qcross_series* series, size_t column) {
  if (series == nullptr || column >= series->names.size()) return nullptr;
  return series->names[column].c_str();
}

double qcross_series_value(const qcross_series* series, size_t row, size_t column) {
  if (series == nullptr || row >= series->result.series.size() ||
      column >= series->names.size()) {
    return std::nan("");
  }
  const qcross::TimeSeries& ts = series->result.series;
  return column == 0 ? ts.time()[row] : ts.channel(column - 1)[row];
}

qcross_status qcross_series_features(const qcross_series* series,
                                     qcross_features* out) {
  if (series == nullptr || out == nullptr) {
    return fail(QCROSS_ERR_INVALID_ARGUMENT, "null argument");
  }
  if (!series->result.features) {
    return fail(QCROSS_ERR_INVALID_ARGUMENT, "run produced no feature report");
  }
  const qcross::FeatureReport& f = *series->result.features;
  *out = qcross_features{f.collapse,           f.revival,
                         f.attractor_dip,      f.collapse_window_max,
                         f.revival_window_max, f.revival_peak_time,
                         f.entropy_peak,       f.entropy_peak_time,
                         f.entropy_dip,        f.entropy_dip_time};
  return QCROSS_OK;
}

qcross_status qcross_timescales_for(double lambda, double mean_photons,
                                    qcross_timescales* out) {
  if (out == nullptr) return fail(QCROSS_ERR_INVALID_ARGUMENT, "null argument");
  if (!(mean_photons >= 0.0)) {
    return fail(QCROSS_ERR_INVALID_ARGUMENT, "mean_photons must be >= 0");
  }
  return guarded([&] {
    const qcross::Timescales s =
        qcross::timescales(jc_params(lambda, std::sqrt(mean_photons), 0.0));
    *out = qcross_timescales{s.rabi_period, s.collapse_time, s.revival_time,
                             s.attractor_time};
  });
}

qcross_status qcross_rabi_inversion(double t, double omega0, double nu,
                                    double* out) {
  if (out == nullptr) return fail(QCROSS_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    qcross::SystemParams p;
    p.omega0 = omega0;
    p.nu = nu;
    *out = qcross::analytic_rabi_inversion(t, p);
  });
}

qcross_status qcross_jc_inversion(double t, double lambda, double alpha_re,
                                  double alpha_im, double* out) {
  if (out == nullptr) return fail(QCROSS_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const qcross::SystemParams p = jc_params(lambda, alpha_re, alpha_im);
    *out = qcross::analytic_jc_inversion(t, p, qcross::jc_terms_required(p));
  });
}

qcross_status qcross_classify_regime(double gamma, double lambda,
                                     double mean_photons, double margin,
                                     qcross_regime* out) {
  if (out == nullptr) return fail(QCROSS_ERR_INVALID_ARGUMENT, "null argument");
  if (!(mean_photons >= 0.0)) {
    return fail(QCROSS_ERR_INVALID_ARGUMENT, "mean_photons must be >= 0");
  }
  return guarded([&] {
    switch (qcross::classify_regime(
        gamma, jc_params(lambda, std::sqrt(mean_photons), 0.0), margin)) {
      case qcross::Regime::Classical: *out = QCROSS_REGIME_CLASSICAL; break;
      case qcross::Regime::Crossover: *out = QCROSS_REGIME_CROSSOVER; break;
      case qcross::Regime::Quantum: *out = QCROSS_REGIME_QUANTUM; break;
    }
  });
}

}  // extern "C"
