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

// Truncated qubit (x) Fock space.
//
// Basis ordering is qubit-major: the full-space index of |q, n> is
// q * (n_max + 1) + n with q = 0 for |up> and q = 1 for |down>. Every module
// relies on this; partial traces and Kronecker products are written for it.

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

namespace qcross {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

enum class Space { Qubit, Field, Full };

const char* to_string(Space space) noexcept;

class FockCutoff {
 public:
  static constexpr double kDefaultLeakageTolerance = 1e-10;

  explicit FockCutoff(int n_max,
                      double leakage_tolerance = kDefaultLeakageTolerance);

  // ceil(nbar + 10 sqrt(nbar)), never below 1.
  static FockCutoff for_mean_photons(
      double nbar, double leakage_tolerance = kDefaultLeakageTolerance);

  int n_max() const noexcept { return n_max_; }
  double leakage_tolerance() const noexcept { return leakage_tolerance_; }
  Index field_dim() const noexcept { return n_max_ + 1; }
  Index full_dim() const noexcept { return 2 * (n_max_ + 1); }
  Index dim(Space space) const noexcept;

  friend bool operator==(const FockCutoff&, const FockCutoff&) = default;

 private:
  int n_max_;
  double leakage_tolerance_;
};

class OperatorMatrix {
 public:
  OperatorMatrix(Space space, Matrix entries);

  Space space() const noexcept { return space_; }
  Index dim() const noexcept { return entries_.rows(); }
  const Matrix& matrix() const noexcept { return entries_; }

  OperatorMatrix adjoint() const;
  // max |A - A^dagger| over elements
  double hermiticity_error() const;

  OperatorMatrix& operator+=(const OperatorMatrix& other);
  OperatorMatrix& operator-=(const OperatorMatrix& other);
  OperatorMatrix& operator*=(Complex scale);

  friend OperatorMatrix operator+(OperatorMatrix lhs, const OperatorMatrix& rhs) {
    return lhs += rhs;
  }
  friend OperatorMatrix operator-(OperatorMatrix lhs, const OperatorMatrix& rhs) {
    return lhs -= rhs;
  }
  friend OperatorMatrix operator*(Complex scale, OperatorMatrix op) {
    return op *= scale;
  }
  friend OperatorMatrix operator*(const OperatorMatrix& lhs,
                                  const OperatorMatrix& rhs);

 private:
  Space space_;
  Matrix entries_;
};

class StateVector {
 public:
  StateVector(Space space, Vector amplitudes);

  Space space() const noexcept { return space_; }
  Index dim() const noexcept { return amplitudes_.size(); }
  const Vector& amplitudes() const noexcept { return amplitudes_; }
  double norm() const { return amplitudes_.norm(); }
  StateVector normalized() const;

 private:
  Space space_;
  Vector amplitudes_;
};

class DensityMatrix {
 public:
  static constexpr double kHermiticityTolerance = 1e-12;
  static constexpr double kTraceTolerance = 1e-8;
  static constexpr double kPositivityTolerance = 1e-8;

  DensityMatrix(Space space, Matrix entries);

  static DensityMatrix pure(const StateVector& state);
  static DensityMatrix maximally_mixed(Space space, Index dim);

  Space space() const noexcept { return space_; }
  Index dim() const noexcept { return entries_.rows(); }
  const Matrix& matrix() const noexcept { return entries_; }

  double trace_error() const;
  double hermiticity_error() const;
  double min_eigenvalue() const;
  DensityMatrix hermitized() const;

  // Throws InvalidArgument naming the first violated invariant.
  void check_invariants(double hermiticity_tol = kHermiticityTolerance,
                        double trace_tol = kTraceTolerance,
                        double positivity_tol = kPositivityTolerance) const;

 private:
  Space space_;
  Matrix entries_;
};

// Field operators (dimension n_max + 1).
OperatorMatrix annihilation(const FockCutoff& cutoff);
OperatorMatrix creation(const FockCutoff& cutoff);
OperatorMatrix number_operator(const FockCutoff& cutoff);
OperatorMatrix field_identity(const FockCutoff& cutoff);

struct QubitOps {
  OperatorMatrix sigma_z;
  OperatorMatrix sigma_x;
  OperatorMatrix sigma_plus;
  OperatorMatrix sigma_minus;
};

QubitOps qubit_ops();
OperatorMatrix qubit_identity();

// Kronecker product qubit (x) field in qubit-major order.
OperatorMatrix tensor(const OperatorMatrix& qubit_op,
                      const OperatorMatrix& field_op);
OperatorMatrix embed_field(const OperatorMatrix& field_op);
OperatorMatrix embed_qubit(const OperatorMatrix& qubit_op,
                           const FockCutoff& cutoff);

// Weight of the Poisson distribution with mean |alpha|^2 above n_max.
double coherent_tail_weight(Complex alpha, int n_max);

// Truncated, renormalized coherent state. Throws CutoffTooSmall when the
// discarded weight exceeds cutoff.leakage_tolerance().
StateVector coherent_state(Complex alpha, const FockCutoff& cutoff);
StateVector fock_state(int n, const FockCutoff& cutoff);
StateVector qubit_up();
StateVector qubit_down();
StateVector product_state(const StateVector& qubit, const StateVector& field);

Complex expectation(const OperatorMatrix& op, const StateVector& state);
Complex expectation(const OperatorMatrix& op, const DensityMatrix& rho);

}  // namespace qcross
