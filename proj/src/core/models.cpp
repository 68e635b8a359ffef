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

#include "core/models.hpp"

#include <cmath>
#include <string>

#include "core/errors.hpp"

namespace qcross {

namespace {

constexpr Complex kI{0.0, 1.0};

void require(bool ok, const char* key, const std::string& message) {
  if (!ok) throw Error(ErrorKind::ValidationError, message, key);
}

}  // namespace

void SystemParams::validate() const {
  require(std::isfinite(omega) && omega > 0.0, "omega", "omega must be > 0");
  require(std::isfinite(omega0), "omega0_over_omega", "omega0 must be finite");
  require(std::isfinite(gamma) && gamma >= 0.0, "gamma_over_omega",
          "gamma must be >= 0");
  require(std::isfinite(lambda) && lambda >= 0.0, "lambda_over_omega",
          "lambda must be >= 0");
  require(std::isfinite(nu) && nu >= 0.0, "nu_over_omega", "nu must be >= 0");
  require(gamma < 2.0 * omega, "gamma_over_omega",
          "gamma must be < 2 omega so the shifted frequency stays real");
  require(std::isfinite(alpha.real()) && std::isfinite(alpha.imag()), "alpha",
          "alpha must be finite");
  require(drive_convention != DriveConvention::Literal || alpha.imag() == 0.0,
          "alpha", "the literal drive convention requires a real alpha");
}

OperatorMatrix h_classical(double t, const SystemParams& p) {
  const QubitOps q = qubit_ops();
  Matrix h = 0.5 * p.omega0 * q.sigma_z.matrix() +
             p.nu * std::cos(p.omega * t) * q.sigma_x.matrix();
  return OperatorMatrix(Space::Qubit, std::move(h));
}

OperatorMatrix h_jc(const SystemParams& p, const FockCutoff& cutoff) {
  const QubitOps q = qubit_ops();
  const OperatorMatrix a = annihilation(cutoff);
  const OperatorMatrix ad = a.adjoint();
  const OperatorMatrix n = number_operator(cutoff);
  const OperatorMatrix field_i = field_identity(cutoff);

  OperatorMatrix h = Complex(0.5 * p.omega0) * tensor(q.sigma_z, field_i);
  h += Complex(p.omega) * embed_field(n + Complex(0.5) * field_i);
  h += Complex(p.lambda) * (tensor(q.sigma_plus, a) + tensor(q.sigma_minus, ad));
  return h;
}

double drive_coefficient(double t, const SystemParams& p) {
  if (!p.drive_enabled || p.gamma == 0.0) return 0.0;
  switch (p.drive_convention) {
    case DriveConvention::PhaseMatched:
      return -p.gamma * (p.alpha * std::exp(-kI * (p.omega * t))).imag();
    case DriveConvention::Literal:
      return -p.gamma * p.alpha.real() * std::cos(p.omega * t);
  }
  return 0.0;
}

OperatorMatrix h_drive(double t, const SystemParams& p, const FockCutoff& cutoff) {
  const OperatorMatrix a = annihilation(cutoff);
  return Complex(drive_coefficient(t, p)) * embed_field(a + a.adjoint());
}

OperatorMatrix h_shift(const SystemParams& p, const FockCutoff& cutoff) {
  const OperatorMatrix a = annihilation(cutoff);
  const OperatorMatrix ad = a.adjoint();
  const double g = p.shift_enabled ? p.gamma : 0.0;
  return (kI * (g / 4.0)) * embed_field(ad * ad - a * a);
}

std::vector<OperatorMatrix> lindblad_ops(const SystemParams& p,
                                         const FockCutoff& cutoff) {
  std::vector<OperatorMatrix> ops;
  if (p.gamma > 0.0) {
    ops.push_back(Complex(std::sqrt(p.gamma)) * embed_field(annihilation(cutoff)));
  }
  return ops;
}

OperatorMatrix h_total(double t, const SystemParams& p, const FockCutoff& cutoff) {
  return h_jc(p, cutoff) + h_drive(t, p, cutoff) + h_shift(p, cutoff);
}

Model::Model(const SystemParams& params, const FockCutoff& cutoff)
    : params_(params), cutoff_(cutoff) {
  params_.validate();
  h_static_ = (h_jc(params_, cutoff_) + h_shift(params_, cutoff_)).matrix();
  const OperatorMatrix a = annihilation(cutoff_);
  quadrature_ = embed_field(a + a.adjoint()).matrix();
  generator_ = -kI * h_static_;
  for (const OperatorMatrix& l : lindblad_ops(params_, cutoff_)) {
    lindblad_.push_back(l.matrix());
    lindblad_adjoint_.push_back(l.matrix().adjoint());
    generator_ -= 0.5 * (lindblad_adjoint_.back() * lindblad_.back());
  }
  sparse_generator_ = generator_.sparseView();
  sparse_quadrature_ = quadrature_.sparseView();
  for (const Matrix& l : lindblad_) sparse_lindblad_.emplace_back(l.sparseView());
}

double Model::drive_coefficient(double t) const {
  return qcross::drive_coefficient(t, params_);
}

Matrix Model::generator(double t) const {
  const double f = drive_coefficient(t);
  if (f == 0.0) return generator_;
  return generator_ - (kI * f) * quadrature_;
}

OperatorMatrix Model::hamiltonian(double t) const {
  return OperatorMatrix(Space::Full,
                        h_static_ + drive_coefficient(t) * quadrature_);
}

}  // namespace qcross
