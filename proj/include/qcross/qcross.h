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


/* C interface to the qcross simulation library.
 *
 * Every fallible call returns a qcross_status. On failure the thread-local
 * error record (qcross_last_error and friends) describes what went wrong.
 * Handles are opaque and owned by the caller; free them with the matching
 * *_free function. Strings returned by the library stay valid until the
 * owning handle is freed or, for error strings, until the next failing call
 * on the same thread.
 */
#ifndef QCROSS_QCROSS_H_
#define QCROSS_QCROSS_H_

#include <stddef.h>
#include <stdint.h>

#if defined(QCROSS_BUILDING_LIBRARY)
#define QCROSS_API __attribute__((visibility("default")))
#else
#define QCROSS_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qcross_status {
  QCROSS_OK = 0,
  QCROSS_ERR_PARSE = 1,            /* malformed config text */
  QCROSS_ERR_VALIDATION = 2,       /* well-formed config with a bad value */
  QCROSS_ERR_IO = 3,               /* file could not be read or written */
  QCROSS_ERR_RUNTIME = 4,          /* numerical failure during a run */
  QCROSS_ERR_INVALID_ARGUMENT = 5  /* bad argument to a library call */
} qcross_status;

typedef enum qcross_regime {
  QCROSS_REGIME_CLASSICAL = 0,
  QCROSS_REGIME_CROSSOVER = 1,
  QCROSS_REGIME_QUANTUM = 2
} qcross_regime;

typedef struct qcross_scenario qcross_scenario;
typedef struct qcross_series qcross_series;

typedef struct qcross_timescales {
  double rabi_period;
  double collapse_time;
  double revival_time;
  double attractor_time;
} qcross_timescales;

typedef struct qcross_features {
  int collapse;
  int revival;
  int attractor_dip;
  double collapse_window_max;
  double revival_window_max;
  double revival_peak_time;
  double entropy_peak;
  double entropy_peak_time;
  double entropy_dip;
  double entropy_dip_time;
} qcross_features;

QCROSS_API const char* qcross_version(void);

/* Error record of the last failing call on this thread. */
QCROSS_API const char* qcross_last_error(void);
QCROSS_API const char* qcross_last_error_key(void); /* config key or "" */
QCROSS_API int qcross_last_error_line(void);        /* config line or 0 */

/* Scenarios. */
QCROSS_API qcross_status qcross_scenario_parse(const char* text,
                                               qcross_scenario** out);
QCROSS_API qcross_status qcross_scenario_load(const char* path,
                                              qcross_scenario** out);
QCROSS_API void qcross_scenario_free(qcross_scenario* scenario);
QCROSS_API qcross_status qcross_scenario_set_seed(qcross_scenario* scenario,
                                                  uint64_t seed);
/* 0 selects the hardware concurrency. */
QCROSS_API qcross_status qcross_scenario_set_threads(qcross_scenario* scenario,
                                                     int threads);
/* Canonical "key = value" lines of the resolved config. */
QCROSS_API const char* qcross_scenario_resolved_text(qcross_scenario* scenario);
/* Runs and writes all artifacts under out_dir. */
QCROSS_API qcross_status qcross_scenario_run(const qcross_scenario* scenario,
                                             const char* out_dir);
/* Runs in memory (a sweep list is ignored). */
QCROSS_API qcross_status qcross_scenario_simulate(const qcross_scenario* scenario,
                                                  qcross_series** out);

/* Series: column 0 is omega_t. */
QCROSS_API void qcross_series_free(qcross_series* series);
QCROSS_API size_t qcross_series_rows(const qcross_series* series);
QCROSS_API size_t qcross_series_columns(const qcross_series* series);
QCROSS_API const char* qcross_series_column_name(const qcross_series* series,
                                                 size_t column);
QCROSS_API double qcross_series_value(const qcross_series* series, size_t row,
                                      size_t column);
/* QCROSS_ERR_INVALID_ARGUMENT when the run produced no feature report. */
QCROSS_API qcross_status qcross_series_features(const qcross_series* series,
                                                qcross_features* out);

/* Closed forms (units of omega). */
QCROSS_API qcross_status qcross_timescales_for(double lambda, double mean_photons,
                                               qcross_timescales* out);
QCROSS_API qcross_status qcross_rabi_inversion(double t, double omega0, double nu,
                                               double* out);
QCROSS_API qcross_status qcross_jc_inversion(double t, double lambda,
                                             double alpha_re, double alpha_im,
                                             double* out);
QCROSS_API qcross_status qcross_classify_regime(double gamma, double lambda,
                                                double mean_photons, double margin,
                                                qcross_regime* out);

#ifdef __cplusplus
}
#endif

#endif /* QCROSS_QCROSS_H_ */
