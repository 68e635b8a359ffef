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

#include "core/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "core/errors.hpp"
#include "core/parallel.hpp"

namespace qcross {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kMasterTraceDrift = 1e-6;
constexpr double kQsdNormDrift = 1e-2;
constexpr double kInitialNormTolerance = 1e-9;

std::string format_time(double t) {
  std::ostringstream os;
  os.precision(10);
  os << t;
  return os.str();
}

Error at_time(const Error& e, double t) {
  return Error(e.kind(), "at omega_t = " + format_time(t) + ": " + e.message(),
               e.subject());
}

void require_full_space(Space space, Index dim, const Model& model) {
  if (space != Space::Full || dim != model.dim()) {
    throw Error(ErrorKind::DimensionMismatch,
                "state does not live on the model's full space");
  }
}

std::vector<std::string> channel_names(std::span<const Observer> observers) {
  std::vector<std::string> names;
  for (const Observer& o : observers) names.push_back(o.name);
  names.emplace_back(kNormErrorChannel);
  return names;
}

// -i H(t) rho - 1/2 {L^dagger L, rho} + L rho L^dagger, using that rho is
// Hermitian so the anti-Hermitian half is the adjoint of G rho.
Matrix master_rhs(const Matrix& rho, double t, const Model& model) {
  Matrix half = model.sparse_generator() * rho;
  const double f = model.drive_coefficient(t);
  if (f != 0.0) half.noalias() += (-kI * f) * (model.sparse_quadrature() * rho);
  Matrix out = half + half.adjoint();
  for (const SparseMatrix& l : model.sparse_lindblad()) {
    const Matrix l_rho = l * rho;
    out.noalias() += (l * l_rho.adjoint()).adjoint();
  }
  return out;
}

}  // namespace

const char* to_string(Scheme scheme) noexcept {
  switch (scheme) {
    case Scheme::Rk4: return "rk4";
    case Scheme::EulerMaruyama: return "euler-maruyama";
    case Scheme::Heun: return "heun";
  }
  return "unknown";
}

// --- IntegratorConfig -----------------------------------------------------

std::int64_t IntegratorConfig::steps() const {
  return static_cast<std::int64_t>(std::ceil(t_end / dt - 1e-9));
}

double stability_scale(const SystemParams& p, const FockCutoff& cutoff) {
  return std::max({std::abs(p.omega0), p.omega, p.nu,
                   p.lambda * std::sqrt(p.mean_photons()),
                   p.gamma * cutoff.n_max()});
}

void IntegratorConfig::validate(const SystemParams& p,
                                const FockCutoff& cutoff) const {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw Error(ErrorKind::ValidationError, "dt must be > 0", "dt");
  }
  if (!(t_end > 0.0) || !std::isfinite(t_end)) {
    throw Error(ErrorKind::ValidationError, "t_end must be > 0", "t_end");
  }
  if (sample_stride < 1) {
    throw Error(ErrorKind::ValidationError, "sample_stride must be >= 1",
                "sample_stride");
  }
  const double scale = stability_scale(p, cutoff);
  if (dt * scale > kStabilityBound) {
    throw Error(ErrorKind::ValidationError,
                "dt = " + format_time(dt) + " violates the stability guard "
                "(dt * " + format_time(scale) + " > 0.1)",
                "dt");
  }
}

// --- NoiseStream ----------------------------------------------------------

NoiseStream::NoiseStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream_id),
                    static_cast<std::uint32_t>(stream_id >> 32)};
  engine_.seed(seq);
}

Complex NoiseStream::next(double dt) {
  const double g1 = normal_(engine_);
  const double g2 = normal_(engine_);
  return Complex(g1, g2) * std::sqrt(0.5 * dt);
}

std::vector<Complex> sample_noise(NoiseStream& stream, double dt, int count) {
  if (!(dt > 0.0)) throw Error(ErrorKind::InvalidArgument, "dt must be > 0");
  std::vector<Complex> out;
  out.reserve(static_cast<std::size_t>(std::max(count, 0)));
  for (int i = 0; i < count; ++i) out.push_back(stream.next(dt));
  return out;
}

// --- master equation ------------------------------------------------------

DensityMatrix step_master(const DensityMatrix& rho, double t,
                          const IntegratorConfig& cfg, const Model& model) {
  require_full_space(rho.space(), rho.dim(), model);
  if (cfg.scheme != Scheme::Rk4) {
    throw Error(ErrorKind::InvalidArgument,
                "the master equation is integrated with rk4 only");
  }
  const double dt = cfg.dt;
  const Matrix& r = rho.matrix();
  const Matrix k1 = master_rhs(r, t, model);
  const Matrix k2 = master_rhs(r + (0.5 * dt) * k1, t + 0.5 * dt, model);
  const Matrix k3 = master_rhs(r + (0.5 * dt) * k2, t + 0.5 * dt, model);
  const Matrix k4 = master_rhs(r + dt * k3, t + dt, model);
  Matrix next = r + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  next = 0.5 * (next + next.adjoint()).eval();

  const double drift = std::abs(next.trace() - r.trace());
  if (drift > kMasterTraceDrift) {
    throw Error(ErrorKind::StabilityViolation,
                "trace drifted by " + format_time(drift) + " in one step");
  }
  return DensityMatrix(Space::Full, std::move(next));
}

// --- QSD ------------------------------------------------------------------

Vector qsd_drift(const Vector& psi, double t, const Model& model) {
  Vector d = model.sparse_generator() * psi;
  const double f = model.drive_coefficient(t);
  if (f != 0.0) d.noalias() += (-kI * f) * (model.sparse_quadrature() * psi);
  const auto& ls = model.sparse_lindblad();
  if (!ls.empty()) {
    const double norm2 = psi.squaredNorm();
    for (const SparseMatrix& l : ls) {
      const Vector lpsi = l * psi;
      const Complex mean_l = psi.dot(lpsi) / norm2;
      d += std::conj(mean_l) * lpsi - (0.5 * std::norm(mean_l)) * psi;
    }
  }
  return d;
}

QsdStep step_qsd(const StateVector& psi, double t, const IntegratorConfig& cfg,
                 const Model& model, NoiseStream& stream) {
  require_full_space(psi.space(), psi.dim(), model);
  const double dt = cfg.dt;
  const Vector& v = psi.amplitudes();

  Vector noise = Vector::Zero(v.size());
  for (const SparseMatrix& l : model.sparse_lindblad()) {
    const Vector lpsi = l * v;
    const Complex mean_l = v.dot(lpsi) / v.squaredNorm();
    noise += (lpsi - mean_l * v) * stream.next(dt);
  }

  Vector next;
  switch (cfg.scheme) {
    case Scheme::EulerMaruyama:
      next = v + dt * qsd_drift(v, t, model) + noise;
      break;
    case Scheme::Heun: {
      const Vector a0 = qsd_drift(v, t, model);
      const Vector predictor = v + dt * a0 + noise;
      const Vector a1 = qsd_drift(predictor, t + dt, model);
      next = v + (0.5 * dt) * (a0 + a1) + noise;
      break;
    }
    case Scheme::Rk4: {
      const Vector k1 = qsd_drift(v, t, model);
      const Vector k2 = qsd_drift(v + (0.5 * dt) * k1, t + 0.5 * dt, model);
      const Vector k3 = qsd_drift(v + (0.5 * dt) * k2, t + 0.5 * dt, model);
      const Vector k4 = qsd_drift(v + dt * k3, t + dt, model);
      next = v + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4) + noise;
      break;
    }
  }

  const double n = next.norm();
  const double err = std::abs(n - 1.0);
  if (!(err <= kQsdNormDrift)) {
    throw Error(ErrorKind::StabilityViolation,
                "pre-renormalization norm error " + format_time(err) +
                    " exceeds 1e-2");
  }
  return QsdStep{StateVector(Space::Full, next / n), err};
}

// --- TimeSeries -----------------------------------------------------------

TimeSeries::TimeSeries(std::vector<std::string> channel_names)
    : names_(std::move(channel_names)), channels_(names_.size()) {}

void TimeSeries::append(double t, std::span<const double> values) {
  if (values.size() != channels_.size()) {
    throw Error(ErrorKind::DimensionMismatch,
                "sample has the wrong number of channels");
  }
  time_.push_back(t);
  for (std::size_t c = 0; c < values.size(); ++c) {
    channels_[c].push_back(values[c]);
  }
}

void TimeSeries::add_channel(std::string name, std::vector<double> values) {
  if (values.size() != time_.size()) {
    throw Error(ErrorKind::DimensionMismatch,
                "channel length differs from the time axis");
  }
  names_.push_back(std::move(name));
  channels_.push_back(std::move(values));
}

bool TimeSeries::has(std::string_view name) const {
  return std::find(names_.begin(), names_.end(), name) != names_.end();
}

const std::vector<double>& TimeSeries::channel(std::string_view name) const {
  const auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) {
    throw Error(ErrorKind::InvalidArgument,
                "no channel named '" + std::string(name) + "'");
  }
  return channels_[static_cast<std::size_t>(it - names_.begin())];
}

TimeSeries TimeSeries::strided(std::size_t stride) const {
  if (stride == 0) throw Error(ErrorKind::InvalidArgument, "stride must be >= 1");
  TimeSeries out(names_);
  std::vector<double> row(channels_.size());
  for (std::size_t i = 0; i < time_.size(); i += stride) {
    for (std::size_t c = 0; c < channels_.size(); ++c) row[c] = channels_[c][i];
    out.append(time_[i], row);
  }
  return out;
}

// --- drivers --------------------------------------------------------------

TimeSeries run_trajectory(const StateVector& initial, const IntegratorConfig& cfg,
                          const Model& model, NoiseStream& stream,
                          std::span<const Observer> observers,
                          const StateHook& hook) {
  cfg.validate(model.params(), model.cutoff());
  require_full_space(initial.space(), initial.dim(), model);
  if (std::abs(initial.norm() - 1.0) > kInitialNormTolerance) {
    throw Error(ErrorKind::InvalidArgument, "initial state is not normalized");
  }
  for (const Observer& o : observers) {
    if (!o.of_state) {
      throw Error(ErrorKind::InvalidArgument,
                  "observer '" + o.name + "' cannot read a state vector");
    }
  }

  TimeSeries series(channel_names(observers));
  std::vector<double> row(observers.size() + 1);
  auto record = [&](std::size_t sample, double t, const StateVector& psi,
                    double norm_error) {
    for (std::size_t i = 0; i < observers.size(); ++i) {
      row[i] = observers[i].of_state(psi);
    }
    row.back() = norm_error;
    series.append(t, row);
    if (hook) hook(sample, t, psi);
  };

  StateVector psi = initial;
  record(0, 0.0, psi, 0.0);
  const std::int64_t steps = cfg.steps();
  double worst = 0.0;
  std::size_t sample = 1;
  for (std::int64_t k = 1; k <= steps; ++k) {
    const double t = static_cast<double>(k - 1) * cfg.dt;
    try {
      QsdStep s = step_qsd(psi, t, cfg, model, stream);
      psi = std::move(s.state);
      worst = std::max(worst, s.norm_error);
    } catch (const Error& e) {
      throw at_time(e, t);
    }
    if (k % cfg.sample_stride == 0) {
      record(sample++, static_cast<double>(k) * cfg.dt, psi, worst);
      worst = 0.0;
    }
  }
  return series;
}

TimeSeries run_master(const DensityMatrix& initial, const IntegratorConfig& cfg,
                      const Model& model, std::span<const Observer> observers,
                      const DensityHook& hook) {
  cfg.validate(model.params(), model.cutoff());
  require_full_space(initial.space(), initial.dim(), model);
  initial.check_invariants();
  for (const Observer& o : observers) {
    if (!o.of_density) {
      throw Error(ErrorKind::InvalidArgument,
                  "observer '" + o.name + "' cannot read a density matrix");
    }
  }

  TimeSeries series(channel_names(observers));
  std::vector<double> row(observers.size() + 1);
  auto record = [&](std::size_t sample, double t, const DensityMatrix& rho) {
    for (std::size_t i = 0; i < observers.size(); ++i) {
      row[i] = observers[i].of_density(rho);
    }
    row.back() = rho.trace_error();
    series.append(t, row);
    if (hook) hook(sample, t, rho);
  };

  DensityMatrix rho = initial;
  record(0, 0.0, rho);
  const std::int64_t steps = cfg.steps();
  std::size_t sample = 1;
  for (std::int64_t k = 1; k <= steps; ++k) {
    const double t = static_cast<double>(k - 1) * cfg.dt;
    try {
      rho = step_master(rho, t, cfg, model);
    } catch (const Error& e) {
      throw at_time(e, t);
    }
    if (k % cfg.sample_stride == 0) {
      record(sample++, static_cast<double>(k) * cfg.dt, rho);
    }
  }
  return series;
}

EnsembleResult run_ensemble(const StateVector& initial,
                            const IntegratorConfig& cfg, const Model& model,
                            int n_traj, std::uint64_t base_seed,
                            std::span<const Observer> observers, int threads) {
  if (n_traj < 1) {
    throw Error(ErrorKind::InvalidArgument, "n_traj must be >= 1", "n_traj");
  }
  cfg.validate(model.params(), model.cutoff());

  const auto n = static_cast<std::size_t>(n_traj);
  std::vector<TimeSeries> runs(n);
  parallel_for(n, resolve_threads(threads), [&](std::size_t k) {
    NoiseStream stream(base_seed, k);
    try {
      runs[k] = run_trajectory(initial, cfg, model, stream, observers);
    } catch (const Error& e) {
      throw Error(e.kind(),
                  "trajectory stream_id = " + std::to_string(k) + ": " +
                      e.message(),
                  e.subject());
    }
  });

  const TimeSeries& first = runs.front();
  const std::size_t samples = first.size();
  const std::size_t channels = first.names().size();
  TimeSeries mean(first.names());
  TimeSeries stderr_series(first.names());
  std::vector<double> mean_row(channels), se_row(channels);
  const double count = static_cast<double>(n);
  for (std::size_t s = 0; s < samples; ++s) {
    for (std::size_t c = 0; c < channels; ++c) {
      double sum = 0.0;
      for (std::size_t k = 0; k < n; ++k) sum += runs[k].channel(c)[s];
      const double m = sum / count;
      double sq = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        const double d = runs[k].channel(c)[s] - m;
        sq += d * d;
      }
      mean_row[c] = m;
      se_row[c] = n > 1 ? std::sqrt(sq / (count - 1.0) / count) : 0.0;
    }
    mean.append(first.time()[s], mean_row);
    stderr_series.append(first.time()[s], se_row);
  }
  return EnsembleResult{std::move(mean), std::move(stderr_series), n};
}

}  // namespace qcross
