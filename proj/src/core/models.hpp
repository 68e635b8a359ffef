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

// Hamiltonian and Lindblad operators of the qubit + damped, driven field
// mode. Units: hbar = 1, frequencies in units of the field frequency omega.

#include <vector>

#include <Eigen/SparseCore>

#include "core/hilbert.hpp"

namespace qcross {

// How the compensating field drive takes its phase from alpha.
//
//   PhaseMatched: f(t) = -gamma * Im(alpha e^{-i omega t})
//   Literal:      f(t) = -gamma * alpha * cos(omega t)   (alpha must be real)
//
// The drive term is f(t) (a + a^dagger). PhaseMatched is the choice that
// holds the coherent trajectory alpha e^{-i omega t} on its undamped orbit
// exactly (given the frequency-shift term); for purely imaginary alpha the two
// are the same operator. Literal with real alpha drives the field in
// quadrature and produces a large photon-number transient.
enum class DriveConvention { PhaseMatched, Literal };

struct SystemParams {
  double omega0 = 1.0;  // qubit splitting
  double omega = 1.0;   // field frequency (reference)
  double nu = 0.0;      // classical drive amplitude (classical-field model)
  double lambda = 0.0;  // qubit-field coupling
  double gamma = 0.0;   // field decay constant
  Complex alpha{0.0, 0.0};
  DriveConvention drive_convention = DriveConvention::PhaseMatched;
  bool drive_enabled = true;
  bool shift_enabled = true;

  double delta() const noexcept { return omega0 - omega; }
  double mean_photons() const noexcept { return std::norm(alpha); }

  // Throws ValidationError naming the offending parameter.
  void validate() const;
};

// (omega0 / 2) sigma_z + nu cos(omega t) sigma_x on the qubit space.
OperatorMatrix h_classical(double t, const SystemParams& p);

// Jaynes-Cummings Hamiltonian on the full space.
OperatorMatrix h_jc(const SystemParams& p, const FockCutoff& cutoff);

// Scalar f(t) multiplying (a + a^dagger) in the drive term; zero when the
// drive is disabled or gamma = 0.
double drive_coefficient(double t, const SystemParams& p);

OperatorMatrix h_drive(double t, const SystemParams& p, const FockCutoff& cutoff);

// (i gamma / 4)(a^dagger^2 - a^2): restores the damped-oscillator frequency
// shift that the Lindblad damping alone does not produce.
OperatorMatrix h_shift(const SystemParams& p, const FockCutoff& cutoff);

// [sqrt(gamma) a] on the full space, or empty when gamma = 0.
std::vector<OperatorMatrix> lindblad_ops(const SystemParams& p,
                                         const FockCutoff& cutoff);

OperatorMatrix h_total(double t, const SystemParams& p, const FockCutoff& cutoff);

// Precomputed operator set used by the integrators. Immutable after
// construction; share freely between threads.
using SparseMatrix = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;

class Model {
 public:
  Model(const SystemParams& params, const FockCutoff& cutoff);

  const SystemParams& params() const noexcept { return params_; }
  const FockCutoff& cutoff() const noexcept { return cutoff_; }
  Index dim() const noexcept { return cutoff_.full_dim(); }

  // h_jc + h_shift
  const Matrix& static_hamiltonian() const noexcept { return h_static_; }
  // a + a^dagger on the full space
  const Matrix& drive_quadrature() const noexcept { return quadrature_; }
  double drive_coefficient(double t) const;
  const std::vector<Matrix>& lindblad() const noexcept { return lindblad_; }
  const std::vector<Matrix>& lindblad_adjoint() const noexcept {
    return lindblad_adjoint_;
  }
  // -i H_static - (1/2) sum L^dagger L
  const Matrix& effective_generator() const noexcept { return generator_; }

  // Sparse copies used by the integrators.
  const SparseMatrix& sparse_generator() const noexcept { return sparse_generator_; }
  const SparseMatrix& sparse_quadrature() const noexcept { return sparse_quadrature_; }
  const std::vector<SparseMatrix>& sparse_lindblad() const noexcept {
    return sparse_lindblad_;
  }

  // -i H(t) - (1/2) sum L^dagger L
  Matrix generator(double t) const;
  OperatorMatrix hamiltonian(double t) const;

 private:
  SystemParams params_;
  FockCutoff cutoff_;
  Matrix h_static_;
  Matrix quadrature_;
  std::vector<Matrix> lindblad_;
  std::vector<Matrix> lindblad_adjoint_;
  Matrix generator_;
  SparseMatrix sparse_generator_;
  SparseMatrix sparse_quadrature_;
  std::vector<SparseMatrix> sparse_lindblad_;
};

}  // namespace qcross
