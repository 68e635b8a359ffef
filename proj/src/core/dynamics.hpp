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

// Time evolution: Lindblad master equation, quantum-state-diffusion
// trajectories, noise streams and trajectory ensembles.

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "core/hilbert.hpp"
#include "core/models.hpp"

namespace qcross {

// Rk4: classical fixed-step 4th order. For stochastic runs it integrates the
// drift with the 4th-order scheme and adds the Ito noise increment evaluated
// at the start of the step.
// EulerMaruyama: explicit Euler drift plus Ito noise increment.
// Heun: trapezoidal predictor-corrector drift plus Ito noise increment.
enum class Scheme { Rk4, EulerMaruyama, Heun };

const char* to_string(Scheme scheme) noexcept;

struct IntegratorConfig {
  static constexpr double kStabilityBound = 0.1;

  double dt = 1e-3;
  double t_end = 1.0;
  int sample_stride = 1;
  Scheme scheme = Scheme::Rk4;

  std::int64_t steps() const;
  // Throws ValidationError; includes the stability guard
  // dt * max(omega0, omega, nu, lambda sqrt(nbar), gamma n_max) <= 0.1.
  void validate(const SystemParams& p, const FockCutoff& cutoff) const;
};

double stability_scale(const SystemParams& p, const FockCutoff& cutoff);

// Independent complex Wiener increments for one trajectory. Identical
// (seed, stream_id) pairs replay bit-identical sequences.
class NoiseStream {
 public:
  NoiseStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  // (g1 + i g2) sqrt(dt / 2): E[dxi] = E[dxi^2] = 0, E[|dxi|^2] = dt.
  Complex next(double dt);

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

std::vector<Complex> sample_noise(NoiseStream& stream, double dt, int count);

// One RK4 step of the master equation; output is re-Hermitized.
// Throws StabilityViolation if the trace moves by more than 1e-6.
DensityMatrix step_master(const DensityMatrix& rho, double t,
                          const IntegratorConfig& cfg, const Model& model);

struct QsdStep {
  StateVector state;
  double norm_error;  // | ||psi'|| - 1 | before renormalization
};

// One step of the QSD equation, renormalized afterwards. Throws
// StabilityViolation if the pre-renormalization norm is off by more than 1e-2.
QsdStep step_qsd(const StateVector& psi, double t, const IntegratorConfig& cfg,
                 const Model& model, NoiseStream& stream);

// Drift of the QSD equation at (psi, t); exposed for tests.
Vector qsd_drift(const Vector& psi, double t, const Model& model);

struct Observer {
  std::string name;
  std::function<double(const StateVector&)> of_state;
  std::function<double(const DensityMatrix&)> of_density;
};

class TimeSeries {
 public:
  TimeSeries() = default;
  explicit TimeSeries(std::vector<std::string> channel_names);

  void append(double t, std::span<const double> values);
  void add_channel(std::string name, std::vector<double> values);

  std::size_t size() const noexcept { return time_.size(); }
  const std::vector<double>& time() const noexcept { return time_; }
  const std::vector<std::string>& names() const noexcept { return names_; }
  bool has(std::string_view name) const;
  const std::vector<double>& channel(std::string_view name) const;
  const std::vector<double>& channel(std::size_t index) const {
    return channels_.at(index);
  }

  // Every stride-th sample, starting from the first.
  TimeSeries strided(std::size_t stride) const;

 private:
  std::vector<double> time_;
  std::vector<std::string> names_;
  std::vector<std::vector<double>> channels_;
};

inline constexpr std::string_view kNormErrorChannel = "norm_error";

using StateHook = std::function<void(std::size_t sample, double t,
                                     const StateVector&)>;
using DensityHook = std::function<void(std::size_t sample, double t,
                                       const DensityMatrix&)>;

// Fixed-step QSD loop. Records the observers every sample_stride steps plus a
// norm_error channel (largest pre-renormalization error since the previous
// sample). With gamma = 0 this is plain Schrodinger evolution.
TimeSeries run_trajectory(const StateVector& initial, const IntegratorConfig& cfg,
                          const Model& model, NoiseStream& stream,
                          std::span<const Observer> observers,
                          const StateHook& hook = {});

// Fixed-step master-equation loop; norm_error holds |Tr rho - 1|.
TimeSeries run_master(const DensityMatrix& initial, const IntegratorConfig& cfg,
                      const Model& model, std::span<const Observer> observers,
                      const DensityHook& hook = {});

struct EnsembleResult {
  TimeSeries mean;
  TimeSeries standard_error;
  std::size_t trajectories = 0;
};

// Trajectory k uses NoiseStream(base_seed, k). Trajectories run on up to
// `threads` workers (0 = hardware concurrency); reduction is in stream order.
EnsembleResult run_ensemble(const StateVector& initial,
                            const IntegratorConfig& cfg, const Model& model,
                            int n_traj, std::uint64_t base_seed,
                            std::span<const Observer> observers, int threads = 1);

}  // namespace qcross
