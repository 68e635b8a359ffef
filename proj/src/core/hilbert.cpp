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

#include "core/hilbert.hpp"

#include <cmath>
#include <string>
#include <utility>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

#include "core/errors.hpp"

namespace qcross {

namespace {

void require_dim(Space space, Index rows, Index cols) {
  if (rows != cols) {
    throw Error(ErrorKind::DimensionMismatch, "operator must be square");
  }
  switch (space) {
    case Space::Qubit:
      if (rows != 2) {
        throw Error(ErrorKind::DimensionMismatch,
                    "qubit-space object must have dimension 2, got " +
                        std::to_string(rows));
      }
      break;
    case Space::Field:
      if (rows < 2) {
        throw Error(ErrorKind::DimensionMismatch,
                    "field-space object needs dimension >= 2");
      }
      break;
    case Space::Full:
      if (rows < 4 || rows % 2 != 0) {
        throw Error(ErrorKind::DimensionMismatch,
                    "full-space object needs even dimension >= 4, got " +
                        std::to_string(rows));
      }
      break;
  }
}

void require_same(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (a.space() != b.space() || a.dim() != b.dim()) {
    throw Error(ErrorKind::DimensionMismatch,
                std::string("operator spaces differ: ") + to_string(a.space()) +
                    "/" + std::to_string(a.dim()) + " vs " +
                    to_string(b.space()) + "/" + std::to_string(b.dim()));
  }
}

}  // namespace

const char* to_string(Space space) noexcept {
  switch (space) {
    case Space::Qubit: return "qubit";
    case Space::Field: return "field";
    case Space::Full: return "full";
  }
  return "unknown";
}

FockCutoff::FockCutoff(int n_max, double leakage_tolerance)
    : n_max_(n_max), leakage_tolerance_(leakage_tolerance) {
  if (n_max < 1) {
    throw Error(ErrorKind::InvalidArgument,
                "n_max must be >= 1, got " + std::to_string(n_max), "n_max");
  }
  if (!(leakage_tolerance > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "leakage tolerance must be > 0",
                "leakage_tol");
  }
}

FockCutoff FockCutoff::for_mean_photons(double nbar, double leakage_tolerance) {
  if (!(nbar >= 0.0) || !std::isfinite(nbar)) {
    throw Error(ErrorKind::InvalidArgument, "mean photon number must be >= 0");
  }
  const double raw = std::ceil(nbar + 10.0 * std::sqrt(nbar));
  return FockCutoff(std::max(1, static_cast<int>(raw)), leakage_tolerance);
}

Index FockCutoff::dim(Space space) const noexcept {
  switch (space) {
    case Space::Qubit: return 2;
    case Space::Field: return field_dim();
    case Space::Full: return full_dim();
  }
  return 0;
}

// --- OperatorMatrix -------------------------------------------------------

OperatorMatrix::OperatorMatrix(Space space, Matrix entries)
    : space_(space), entries_(std::move(entries)) {
  require_dim(space_, entries_.rows(), entries_.cols());
}

OperatorMatrix OperatorMatrix::adjoint() const {
  return OperatorMatrix(space_, entries_.adjoint());
}

double OperatorMatrix::hermiticity_error() const {
  return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
}

OperatorMatrix& OperatorMatrix::operator+=(const OperatorMatrix& other) {
  require_same(*this, other);
  entries_ += other.entries_;
  return *this;
}

OperatorMatrix& OperatorMatrix::operator-=(const OperatorMatrix& other) {
  require_same(*this, other);
  entries_ -= other.entries_;
  return *this;
}

OperatorMatrix& OperatorMatrix::operator*=(Complex scale) {
  entries_ *= scale;
  return *this;
}

OperatorMatrix operator*(const OperatorMatrix& lhs, const OperatorMatrix& rhs) {
  require_same(lhs, rhs);
  return OperatorMatrix(lhs.space(), lhs.matrix() * rhs.matrix());
}

// --- StateVector ----------------------------------------------------------

StateVector::StateVector(Space space, Vector amplitudes)
    : space_(space), amplitudes_(std::move(amplitudes)) {
  require_dim(space_, amplitudes_.size(), amplitudes_.size());
}

StateVector StateVector::normalized() const {
  const double n = amplitudes_.norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw Error(ErrorKind::InvalidArgument, "cannot normalize a null state");
  }
  return StateVector(space_, amplitudes_ / n);
}

// --- DensityMatrix --------------------------------------------------------

DensityMatrix::DensityMatrix(Space space, Matrix entries)
    : space_(space), entries_(std::move(entries)) {
  require_dim(space_, entries_.rows(), entries_.cols());
}

DensityMatrix DensityMatrix::pure(const StateVector& state) {
  const Vector& v = state.amplitudes();
  return DensityMatrix(state.space(), v * v.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(Space space, Index dim) {
  return DensityMatrix(space, Matrix::Identity(dim, dim) /
                                  static_cast<double>(dim));
}

double DensityMatrix::trace_error() const {
  return std::abs(entries_.trace() - Complex(1.0, 0.0));
}

double DensityMatrix::hermiticity_error() const {
  return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const {
  const Matrix h = 0.5 * (entries_ + entries_.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

DensityMatrix DensityMatrix::hermitized() const {
  return DensityMatrix(space_, 0.5 * (entries_ + entries_.adjoint()));
}

void DensityMatrix::check_invariants(double hermiticity_tol, double trace_tol,
                                     double positivity_tol) const {
  if (const double e = hermiticity_error(); e > hermiticity_tol) {
    throw Error(ErrorKind::InvalidArgument,
                "density matrix not Hermitian (error " + std::to_string(e) +
                    ")");
  }
  if (const double e = trace_error(); e > trace_tol) {
    throw Error(ErrorKind::InvalidArgument,
                "density matrix trace deviates from 1 by " + std::to_string(e));
  }
  if (const double e = min_eigenvalue(); e < -positivity_tol) {
    throw Error(ErrorKind::NegativeEigenvalue,
                "density matrix has eigenvalue " + std::to_string(e));
  }
}

// --- operators ------------------------------------------------------------

OperatorMatrix annihilation(const FockCutoff& cutoff) {
  const Index d = cutoff.field_dim();
  Matrix a = Matrix::Zero(d, d);
  for (Index n = 1; n < d; ++n) {
    a(n - 1, n) = std::sqrt(static_cast<double>(n));
  }
  return OperatorMatrix(Space::Field, std::move(a));
}

OperatorMatrix creation(const FockCutoff& cutoff) {
  return annihilation(cutoff).adjoint();
}

OperatorMatrix number_operator(const FockCutoff& cutoff) {
  const Index d = cutoff.field_dim();
  Matrix n = Matrix::Zero(d, d);
  for (Index k = 0; k < d; ++k) n(k, k) = static_cast<double>(k);
  return OperatorMatrix(Space::Field, std::move(n));
}

OperatorMatrix field_identity(const FockCutoff& cutoff) {
  const Index d = cutoff.field_dim();
  return OperatorMatrix(Space::Field, Matrix::Identity(d, d));
}

QubitOps qubit_ops() {
  Matrix sz(2, 2), sx(2, 2), sp(2, 2), sm(2, 2);
  sz << 1.0, 0.0, 0.0, -1.0;
  sx << 0.0, 1.0, 1.0, 0.0;
  sp << 0.0, 1.0, 0.0, 0.0;  // |up><down|
  sm << 0.0, 0.0, 1.0, 0.0;
  return QubitOps{OperatorMatrix(Space::Qubit, sz),
                  OperatorMatrix(Space::Qubit, sx),
                  OperatorMatrix(Space::Qubit, sp),
                  OperatorMatrix(Space::Qubit, sm)};
}

OperatorMatrix qubit_identity() {
  return OperatorMatrix(Space::Qubit, Matrix::Identity(2, 2));
}

OperatorMatrix tensor(const OperatorMatrix& qubit_op,
                      const OperatorMatrix& field_op) {
  if (qubit_op.space() != Space::Qubit || field_op.space() != Space::Field) {
    throw Error(ErrorKind::DimensionMismatch,
                "tensor expects (qubit, field) operands");
  }
  Matrix full = Eigen::kroneckerProduct(qubit_op.matrix(), field_op.matrix());
  return OperatorMatrix(Space::Full, std::move(full));
}

OperatorMatrix embed_field(const OperatorMatrix& field_op) {
  return tensor(qubit_identity(), field_op);
}

OperatorMatrix embed_qubit(const OperatorMatrix& qubit_op,
                           const FockCutoff& cutoff) {
  return tensor(qubit_op, field_identity(cutoff));
}

// --- states ---------------------------------------------------------------

double coherent_tail_weight(Complex alpha, int n_max) {
  const double nbar = std::norm(alpha);
  if (nbar == 0.0) return 0.0;
  // log P(n) for Poisson(nbar), summed from n_max + 1 upward.
  const double log_nbar = std::log(nbar);
  double sum = 0.0;
  for (long n = n_max + 1;; ++n) {
    const double dn = static_cast<double>(n);
    const double log_p = -nbar + dn * log_nbar - std::lgamma(dn + 1.0);
    const double p = std::exp(log_p);
    sum += p;
    if (dn > nbar && (p < 1e-300 || p < 1e-17 * sum)) break;
  }
  return sum;
}

StateVector coherent_state(Complex alpha, const FockCutoff& cutoff) {
  const double tail = coherent_tail_weight(alpha, cutoff.n_max());
  if (tail > cutoff.leakage_tolerance()) {
    throw Error(ErrorKind::CutoffTooSmall,
                "coherent state |alpha|^2 = " + std::to_string(std::norm(alpha)) +
                    " loses weight " + std::to_string(tail) + " above n_max = " +
                    std::to_string(cutoff.n_max()),
                "n_max");
  }
  const Index d = cutoff.field_dim();
  Vector c = Vector::Zero(d);
  // c_0 = exp(-|alpha|^2 / 2), c_{n+1} = c_n alpha / sqrt(n + 1). For very
  // large |alpha| the seed underflows, so carry a running rescale; the final
  // renormalization absorbs it.
  const double nbar = std::norm(alpha);
  Complex current = nbar < 1400.0 ? Complex(std::exp(-0.5 * nbar), 0.0)
                                  : Complex(1e-300, 0.0);
  c(0) = current;
  for (Index n = 0; n + 1 < d; ++n) {
    current *= alpha / std::sqrt(static_cast<double>(n + 1));
    if (std::abs(current) > 1e250) {
      c /= 1e250;
      current /= 1e250;
    }
    c(n + 1) = current;
  }
  return StateVector(Space::Field, c / c.norm());
}

StateVector fock_state(int n, const FockCutoff& cutoff) {
  if (n < 0 || n > cutoff.n_max()) {
    throw Error(ErrorKind::InvalidArgument,
                "Fock level " + std::to_string(n) + " outside cutoff");
  }
  Vector v = Vector::Zero(cutoff.field_dim());
  v(n) = 1.0;
  return StateVector(Space::Field, std::move(v));
}

StateVector qubit_up() {
  Vector v(2);
  v << 1.0, 0.0;
  return StateVector(Space::Qubit, v);
}

StateVector qubit_down() {
  Vector v(2);
  v << 0.0, 1.0;
  return StateVector(Space::Qubit, v);
}

StateVector product_state(const StateVector& qubit, const StateVector& field) {
  if (qubit.space() != Space::Qubit || field.space() != Space::Field) {
    throw Error(ErrorKind::DimensionMismatch,
                "product_state expects (qubit, field) states");
  }
  Vector full = Eigen::kroneckerProduct(qubit.amplitudes(), field.amplitudes());
  return StateVector(Space::Full, std::move(full));
}

Complex expectation(const OperatorMatrix& op, const StateVector& state) {
  if (op.space() != state.space() || op.dim() != state.dim()) {
    throw Error(ErrorKind::DimensionMismatch,
                "operator and state dimensions differ");
  }
  const Vector& v = state.amplitudes();
  return v.dot(op.matrix() * v);  // dot() conjugates the left operand
}

Complex expectation(const OperatorMatrix& op, const DensityMatrix& rho) {
  if (op.space() != rho.space() || op.dim() != rho.dim()) {
    throw Error(ErrorKind::DimensionMismatch,
                "operator and density matrix dimensions differ");
  }
  // Tr(rho A) without forming the product.
  return (rho.matrix().transpose().cwiseProduct(op.matrix())).sum();
}

}  // namespace qcross
