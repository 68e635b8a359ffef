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

#include "core/observables.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

#include "core/errors.hpp"
#include "core/parallel.hpp"

namespace qcross {

namespace {

constexpr double kClampThreshold = 1e-8;

Index field_dim_of(Space space, Index dim) {
  if (space != Space::Full) {
    throw Error(ErrorKind::DimensionMismatch, "expected a full-space state");
  }
  return dim / 2;
}

// Amplitudes as a 2 x (n_max + 1) matrix: row = qubit, column = Fock level.
Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic,
                               Eigen::RowMajor>>
amplitude_matrix(const StateVector& state) {
  const Index d = field_dim_of(state.space(), state.dim());
  return {state.amplitudes().data(), 2, d};
}

// Last Fock level with population above the noise floor.
Index effective_support(const Matrix& rho) {
  Index last = 0;
  const double floor = 1e-18 * std::max(1.0, rho.diagonal().real().maxCoeff());
  for (Index n = 0; n < rho.rows(); ++n) {
    if (std::abs(rho(n, n)) > floor) last = n;
  }
  return last + 1;
}

}  // namespace

double inversion(const StateVector& state) {
  const auto m = amplitude_matrix(state);
  return m.row(0).squaredNorm() - m.row(1).squaredNorm();
}

double inversion(const DensityMatrix& rho) {
  const Index d = field_dim_of(rho.space(), rho.dim());
  const Matrix& r = rho.matrix();
  return r.diagonal().head(d).real().sum() - r.diagonal().tail(d).real().sum();
}

DensityMatrix reduce_qubit(const StateVector& state) {
  const auto m = amplitude_matrix(state);
  return DensityMatrix(Space::Qubit, m * m.adjoint());
}

DensityMatrix reduce_qubit(const DensityMatrix& rho) {
  const Index d = field_dim_of(rho.space(), rho.dim());
  const Matrix& r = rho.matrix();
  Matrix q(2, 2);
  for (Index a = 0; a < 2; ++a) {
    for (Index b = 0; b < 2; ++b) {
      q(a, b) = r.block(a * d, b * d, d, d).trace();
    }
  }
  return DensityMatrix(Space::Qubit, std::move(q));
}

DensityMatrix reduce_field(const StateVector& state) {
  const auto m = amplitude_matrix(state);
  // (rho_f)_{nm} = sum_q psi_{q n} conj(psi_{q m})
  return DensityMatrix(Space::Field, m.transpose() * m.conjugate());
}

DensityMatrix reduce_field(const DensityMatrix& rho) {
  const Index d = field_dim_of(rho.space(), rho.dim());
  const Matrix& r = rho.matrix();
  return DensityMatrix(Space::Field, r.topLeftCorner(d, d) + r.bottomRightCorner(d, d));
}

double entropy_nats(const DensityMatrix& rho) {
  const Matrix h = 0.5 * (rho.matrix() + rho.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (const double v : solver.eigenvalues()) {
    if (v < -kClampThreshold) {
      throw Error(ErrorKind::NegativeEigenvalue,
                  "density matrix eigenvalue " + std::to_string(v));
    }
    if (v > 0.0) s -= v * std::log(v);
  }
  return s;
}

double photon_number(const StateVector& state) {
  const Vector& v = state.amplitudes();
  const Index d = state.space() == Space::Full ? v.size() / 2 : v.size();
  if (state.space() == Space::Qubit) {
    throw Error(ErrorKind::DimensionMismatch, "qubit state has no field");
  }
  double sum = 0.0;
  for (Index i = 0; i < v.size(); ++i) {
    sum += static_cast<double>(i % d) * std::norm(v(i));
  }
  return sum;
}

double photon_number(const DensityMatrix& rho) {
  if (rho.space() == Space::Qubit) {
    throw Error(ErrorKind::DimensionMismatch, "qubit state has no field");
  }
  const Index d = rho.space() == Space::Full ? rho.dim() / 2 : rho.dim();
  double sum = 0.0;
  for (Index i = 0; i < rho.dim(); ++i) {
    sum += static_cast<double>(i % d) * rho.matrix()(i, i).real();
  }
  return sum;
}

std::vector<Observer> standard_observers() {
  return {
      Observer{"sigma_z", [](const StateVector& s) { return inversion(s); },
               [](const DensityMatrix& r) { return inversion(r); }},
      Observer{"entropy_nats",
               [](const StateVector& s) { return entropy_nats(reduce_qubit(s)); },
               [](const DensityMatrix& r) { return entropy_nats(reduce_qubit(r)); }},
      Observer{"photon_number",
               [](const StateVector& s) { return photon_number(s); },
               [](const DensityMatrix& r) { return photon_number(r); }},
  };
}

// --- Wigner ---------------------------------------------------------------

void GridSpec::validate() const {
  if (resolution < 2) {
    throw Error(ErrorKind::ValidationError, "resolution must be >= 2",
                "wigner_resolution");
  }
  if (!(x_max > x_min) || !(p_max > p_min)) {
    throw Error(ErrorKind::ValidationError, "empty phase-space window",
                "wigner_x_min");
  }
}

double GridSpec::x_at(int i) const {
  return x_min + (x_max - x_min) * i / (resolution - 1);
}

double GridSpec::p_at(int j) const {
  return p_min + (p_max - p_min) * j / (resolution - 1);
}

double GridSpec::cell_area() const {
  return (x_max - x_min) / (resolution - 1) * (p_max - p_min) / (resolution - 1);
}

double wigner_point(const DensityMatrix& rho_field, double x, double p) {
  if (rho_field.space() != Space::Field) {
    throw Error(ErrorKind::DimensionMismatch,
                "Wigner function needs a field-space density matrix");
  }
  const Matrix& rho = rho_field.matrix();
  const Index n = effective_support(rho);
  const Complex beta = Complex(x, p) / std::numbers::sqrt2;
  const Complex two_beta = 2.0 * beta;
  const Complex two_beta_conj = std::conj(two_beta);

  // w[k] holds the Fock-basis element W_{m,k}(beta) for the current row m,
  // built by three-term recurrences that stay bounded by 1/pi.
  std::vector<Complex> w(static_cast<std::size_t>(n));
  std::vector<double> root(static_cast<std::size_t>(n + 1));
  for (Index k = 0; k <= n; ++k) root[k] = std::sqrt(static_cast<double>(k));

  w[0] = std::exp(-2.0 * std::norm(beta)) / std::numbers::pi;
  double sum = rho(0, 0).real() * w[0].real();
  for (Index k = 1; k < n; ++k) {
    w[k] = two_beta * w[k - 1] / root[k];
    sum += 2.0 * (rho(0, k) * w[k]).real();
  }
  for (Index m = 1; m < n; ++m) {
    Complex prev = w[m];
    w[m] = (two_beta_conj * prev - root[m] * w[m - 1]) / root[m];
    sum += (rho(m, m) * w[m]).real();
    for (Index k = m + 1; k < n; ++k) {
      const Complex next = (two_beta * w[k - 1] - root[m] * prev) / root[k];
      prev = w[k];
      w[k] = next;
      sum += 2.0 * (rho(m, k) * w[k]).real();
    }
  }
  return sum;
}

WignerGrid wigner(const DensityMatrix& rho_field, const GridSpec& spec,
                  int threads, bool require_normalized) {
  spec.validate();
  if (rho_field.space() != Space::Field) {
    throw Error(ErrorKind::DimensionMismatch,
                "Wigner function needs a field-space density matrix");
  }
  WignerGrid grid{spec, Eigen::MatrixXd(spec.resolution, spec.resolution)};
  const auto rows = static_cast<std::size_t>(spec.resolution);
  parallel_for(rows, resolve_threads(threads), [&](std::size_t row) {
    const int j = static_cast<int>(row);
    for (int i = 0; i < spec.resolution; ++i) {
      grid.values(j, i) = wigner_point(rho_field, spec.x_at(i), spec.p_at(j));
    }
  });
  if (require_normalized) {
    const double total = grid.integral();
    if (std::abs(total - 1.0) > WignerGrid::kNormalizationTolerance) {
      throw Error(ErrorKind::GridTooCoarse,
                  "Wigner grid integrates to " + std::to_string(total) +
                      "; widen or refine the window");
    }
  }
  return grid;
}

}  // namespace qcross
