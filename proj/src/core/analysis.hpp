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

#include <string>

#include "core/dynamics.hpp"
#include "core/models.hpp"

namespace qcross {

// Collapse-and-revival timescales in units of 1/omega.
struct Timescales {
  double rabi_period;     // pi / (lambda sqrt(nbar))
  double collapse_time;   // sqrt(2) / lambda
  double revival_time;    // 2 pi sqrt(nbar) / lambda
  double attractor_time;  // revival_time / 2
};

// Throws DegenerateCoupling when lambda = 0, InvalidArgument when nbar = 0.
Timescales timescales(const SystemParams& p);

// exp(-t^2 / t_c^2)
double collapse_envelope(double t, const SystemParams& p);

enum class Regime { Classical, Crossover, Quantum };

const char* to_string(Regime regime) noexcept;

struct RegimeThresholds {
  double classical;  // lambda sqrt(nbar) / pi
  double quantum;    // lambda / (2 pi sqrt(nbar))
};

RegimeThresholds regime_thresholds(const SystemParams& p);

// Quantum if gamma <= quantum / margin, else Classical if
// gamma >= margin * classical, else Crossover.
Regime classify_regime(double gamma, const SystemParams& p, double margin = 10.0);

struct FeatureThresholds {
  double collapse_max = 0.15;  // max |sigma_z| allowed in [1.5 t_c, 0.7 t_r]
  double revival_min = 0.25;   // max |sigma_z| required in [0.85 t_r, 1.15 t_r],
                               // counted only after a completed collapse
  double dip_fraction = 0.3;   // min S in [0.4 t_r, 0.6 t_r] below this x peak S
};

struct FeatureReport {
  bool collapse = false;
  bool revival = false;
  bool attractor_dip = false;
  double collapse_window_max = 0.0;
  double revival_window_max = 0.0;
  double revival_peak_time = 0.0;
  double entropy_peak = 0.0;       // max S over [0, 0.4 t_r]
  double entropy_peak_time = 0.0;
  double entropy_dip = 0.0;        // min S over [0.4 t_r, 0.6 t_r]
  double entropy_dip_time = 0.0;
};

// Reads the sigma_z and entropy_nats channels. Throws SeriesTooShort unless
// the series reaches t_r.
FeatureReport detect_features(const TimeSeries& series, const Timescales& scales,
                              const FeatureThresholds& thresholds = {});

}  // namespace qcross
