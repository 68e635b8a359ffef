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

#include <vector>

#include "core/dynamics.hpp"
#include "core/hilbert.hpp"

namespace qcross {

// <sigma_z (x) I>, in [-1, 1].
double inversion(const StateVector& state);
double inversion(const DensityMatrix& rho);

// Partial traces of full-space states.
DensityMatrix reduce_qubit(const StateVector& state);
DensityMatrix reduce_qubit(const DensityMatrix& rho);
DensityMatrix reduce_field(const StateVector& state);
DensityMatrix reduce_field(const DensityMatrix& rho);

// Von Neumann entropy -sum l ln l. Eigenvalues in [-1e-8, 0) are clamped to
// zero; anything more negative throws NegativeEigenvalue.
double entropy_nats(const DensityMatrix& rho);

// <a^dagger a> for full- or field-space states.
double photon_number(const StateVector& state);
double photon_number(const DensityMatrix& rho);

// sigma_z, entropy_nats (qubit reduced state), photon_number.
std::vector<Observer> standard_observers();

// Phase-space window. Quadratures are q = (a + a^dagger)/sqrt(2) and
// p = i(a^dagger - a)/sqrt(2); W is normalized so its integral over (x, p) is 1.
struct GridSpec {
  double x_min = -6.0;
  double x_max = 6.0;
  double p_min = -6.0;
  double p_max = 6.0;
  int resolution = 61;  // points per axis, endpoints included

  void validate() const;
  double x_at(int i) const;
  double p_at(int j) const;
  double cell_area() const;
};

struct WignerGrid {
  static constexpr double kNormalizationTolerance = 0.02;

  GridSpec spec;
  // values(j, i) = W(x_i, p_j): one row per momentum value.
  Eigen::MatrixXd values;

  double integral() const { return values.sum() * spec.cell_area(); }
  double min() const { return values.minCoeff(); }
  double max() const { return values.maxCoeff(); }
};

// W(x, p) = (1/pi) Tr[D(-beta) rho D(beta) Parity], beta = (x + i p)/sqrt(2).
// Evaluated as sum_mn rho_mn W_mn(beta) with the Fock-basis elements W_mn
// generated by bounded Laguerre recurrences, which stay accurate far from
// the origin.
double wigner_point(const DensityMatrix& rho_field, double x, double p);

// Throws GridTooCoarse if require_normalized and the grid integral is off by
// more than 2%.
WignerGrid wigner(const DensityMatrix& rho_field, const GridSpec& spec,
                  int threads = 1, bool require_normalized = true);

}  // namespace qcross
