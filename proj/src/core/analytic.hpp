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

// Closed-form reference solutions used as independent oracles.

#include "core/hilbert.hpp"
#include "core/models.hpp"

namespace qcross {

// Qubit inversion for a qubit starting in |up> driven by a classical field in
// the rotating-wave approximation: cos(nu t) on resonance, otherwise
// 1 - (nu / Omega_R)^2 (1 - cos(Omega_R t)) with Omega_R = sqrt(Delta^2 + nu^2).
double analytic_rabi_inversion(double t, const SystemParams& p);

// Smallest term count whose Poisson tail is below `tail_tolerance`.
int jc_terms_required(const SystemParams& p, double tail_tolerance = 1e-10);

// sum_{n < n_terms} P(n) cos(2 lambda sqrt(n + 1) t) for |up> (x) |alpha> on
// resonance. Throws TailTooLarge if the neglected weight exceeds 1e-10 and
// InvalidArgument if the detuning is nonzero.
double analytic_jc_inversion(double t, const SystemParams& p, int n_terms);

// Exact evolved state of the resonant, closed, truncated Jaynes-Cummings model
// from |up> (x) |alpha>, in the laboratory frame (same Hamiltonian as h_jc).
StateVector analytic_jc_state(double t, const SystemParams& p,
                              const FockCutoff& cutoff);

}  // namespace qcross
