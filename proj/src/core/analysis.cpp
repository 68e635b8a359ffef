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

#include "core/analysis.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "core/errors.hpp"

namespace qcross {

namespace {

struct Extremum {
  double value;
  double time;
  bool found;
};

// Largest f(x) over samples with t in [lo, hi].
template <class F>
Extremum window_max(const TimeSeries& s, const std::vector<double>& x, double lo,
                    double hi, F f) {
  Extremum best{-std::numeric_limits<double>::infinity(), 0.0, false};
  const auto& t = s.time();
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < lo || t[i] > hi) continue;
    const double v = f(x[i]);
    if (!best.found || v > best.value) best = {v, t[i], true};
  }
  return best;
}

}  // namespace

Timescales timescales(const SystemParams& p) {
  if (p.lambda == 0.0) {
    throw Error(ErrorKind::DegenerateCoupling,
                "timescales are undefined for lambda = 0", "lambda_over_omega");
  }
  const double nbar = p.mean_photons();
  if (!(nbar > 0.0)) {
    throw Error(ErrorKind::InvalidArgument,
                "timescales need a nonzero mean photon number", "alpha");
  }
  const double root = std::sqrt(nbar);
  const double revival = 2.0 * std::numbers::pi * root / p.lambda;
  return Timescales{std::numbers::pi / (p.lambda * root),
                    std::numbers::sqrt2 / p.lambda, revival, revival / 2.0};
}

double collapse_envelope(double t, const SystemParams& p) {
  // exp(-t^2 / t_c^2) with t_c = sqrt(2) / lambda
  const double x = t * p.lambda;
  return std::exp(-0.5 * x * x);
}

const char* to_string(Regime regime) noexcept {
  switch (regime) {
    case Regime::Classical: return "Classical";
    case Regime::Crossover: return "Crossover";
    case Regime::Quantum: return "Quantum";
  }
  return "Unknown";
}

RegimeThresholds regime_thresholds(const SystemParams& p) {
  const double root = std::sqrt(p.mean_photons());
  const double quantum =
      root > 0.0 ? p.lambda / (2.0 * std::numbers::pi * root) : 0.0;
  return RegimeThresholds{p.lambda * root / std::numbers::pi, quantum};
}

Regime classify_regime(double gamma, const SystemParams& p, double margin) {
  if (!(margin >= 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "regime margin must be >= 1",
                "regime_margin");
  }
  const RegimeThresholds th = regime_thresholds(p);
  if (gamma <= th.quantum / margin) return Regime::Quantum;
  if (gamma >= th.classical * margin) return Regime::Classical;
  return Regime::Crossover;
}

FeatureReport detect_features(const TimeSeries& series, const Timescales& scales,
                              const FeatureThresholds& thresholds) {
  const double tr = scales.revival_time;
  if (series.size() == 0 || series.time().back() < tr) {
    throw Error(ErrorKind::SeriesTooShort,
                "series must cover the revival time " + std::to_string(tr));
  }
  const auto& sz = series.channel("sigma_z");
  const auto& entropy = series.channel("entropy_nats");
  auto abs_value = [](double v) { return std::abs(v); };
  auto identity = [](double v) { return v; };
  auto negated = [](double v) { return -v; };

  FeatureReport r;
  const Extremum collapse =
      window_max(series, sz, 1.5 * scales.collapse_time, 0.7 * tr, abs_value);
  const Extremum revival = window_max(series, sz, 0.85 * tr, 1.15 * tr, abs_value);
  const Extremum peak = window_max(series, entropy, 0.0, 0.4 * tr, identity);
  const Extremum dip = window_max(series, entropy, 0.4 * tr, 0.6 * tr, negated);

  if (collapse.found) {
    r.collapse_window_max = collapse.value;
    r.collapse = collapse.value < thresholds.collapse_max;
  }
  if (revival.found) {
    r.revival_window_max = revival.value;
    r.revival_peak_time = revival.time;
    // A revival is a return of oscillations after a completed collapse.
    r.revival = r.collapse && revival.value > thresholds.revival_min;
  }
  if (peak.found) {
    r.entropy_peak = peak.value;
    r.entropy_peak_time = peak.time;
  }
  if (dip.found) {
    r.entropy_dip = -dip.value;
    r.entropy_dip_time = dip.time;
    r.attractor_dip = peak.found && r.entropy_peak > 0.0 &&
                      r.entropy_dip < thresholds.dip_fraction * r.entropy_peak;
  }
  return r;
}

}  // namespace qcross
