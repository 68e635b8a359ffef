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

#include "core/analytic.hpp"

#include <cmath>

#include "core/errors.hpp"

namespace qcross {

namespace {

constexpr double kResonanceTolerance = 1e-12;
constexpr double kTailTolerance = 1e-10;

void require_resonant(const SystemParams& p) {
  if (std::abs(p.delta()) > kResonanceTolerance) {
    throw Error(ErrorKind::InvalidArgument,
                "closed-form Jaynes-Cummings solution requires zero detuning");
  }
}

}  // namespace

double analytic_rabi_inversion(double t, const SystemParams& p) {
  const double delta = p.delta();
  if (delta == 0.0) return std::cos(p.nu * t);
  const double rabi = std::hypot(delta, p.nu);
  const double weight = (p.nu / rabi) * (p.nu / rabi);
  return 1.0 - weight * (1.0 - std::cos(rabi * t));
}

int jc_terms_required(const SystemParams& p, double tail_tolerance) {
  int n_max = 0;
  while (coherent_tail_weight(p.alpha, n_max) > tail_tolerance) ++n_max;
  return n_max + 1;
}

double analytic_jc_inversion(double t, const SystemParams& p, int n_terms) {
  require_resonant(p);
  if (n_terms < 1) {
    throw Error(ErrorKind::InvalidArgument, "n_terms must be >= 1");
  }
  const double tail = coherent_tail_weight(p.alpha, n_terms - 1);
  if (tail > kTailTolerance) {
    throw Error(ErrorKind::TailTooLarge,
                "neglected Poisson weight " + std::to_string(tail) +
                    " with n_terms = " + std::to_string(n_terms));
  }
  const double nbar = p.mean_photons();
  // Poisson weights by recurrence P(n+1) = P(n) nbar / (n+1).
  double weight = std::exp(-nbar);
  double sum = 0.0;
  for (int n = 0; n < n_terms; ++n) {
    if (n > 0) weight *= nbar / n;
    sum += weight * std::cos(2.0 * p.lambda * std::sqrt(n + 1.0) * t);
  }
  return sum;
}

StateVector analytic_jc_state(double t, const SystemParams& p,
                              const FockCutoff& cutoff) {
  require_resonant(p);
  const Vector c = coherent_state(p.alpha, cutoff).amplitudes();
  const Index d = cutoff.field_dim();
  const Index n_max = cutoff.n_max();
  Vector psi = Vector::Zero(2 * d);
  for (Index n = 0; n <= n_max; ++n) {
    // The |up, n>, |down, n+1> block is degenerate at energy omega (n + 1).
    const Complex phase = std::polar(1.0, -p.omega * static_cast<double>(n + 1) * t);
    if (n == n_max) {
      psi(n) = c(n) * phase;  // partner level lies outside the cutoff
      break;
    }
    const double angle = p.lambda * std::sqrt(static_cast<double>(n + 1)) * t;
    psi(n) = c(n) * phase * std::cos(angle);
    psi(d + n + 1) = c(n) * phase * Complex(0.0, -std::sin(angle));
  }
  return StateVector(Space::Full, std::move(psi));
}

}  // namespace qcross
