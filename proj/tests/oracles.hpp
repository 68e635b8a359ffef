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

// Independent reference computations used by the tests. Nothing here calls
// into the library's numerical code paths; inputs and outputs are plain Eigen
// objects.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

namespace oracle {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline double poisson(double nbar, int n) {
  if (nbar == 0.0) return n == 0 ? 1.0 : 0.0;
  return std::exp(-nbar + n * std::log(nbar) - std::lgamma(n + 1.0));
}

// Truncated coherent amplitudes from the closed form with log-factorials.
inline Vector coherent(Complex alpha, int n_max) {
  Vector v(n_max + 1);
  const double r = std::abs(alpha);
  const double phase = std::arg(alpha);
  for (int n = 0; n <= n_max; ++n) {
    const double mag =
        r == 0.0 ? (n == 0 ? 1.0 : 0.0)
                 : std::exp(-0.5 * r * r + n * std::log(r) - 0.5 * std::lgamma(n + 1.0));
    v(n) = std::polar(mag, n * phase);
  }
  return v / v.norm();
}

inline Matrix lowering(int n_max) {
  Matrix a = Matrix::Zero(n_max + 1, n_max + 1);
  for (int n = 1; n <= n_max; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

// Kronecker product written out by index.
inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

// Partial traces of a qubit (x) field density matrix by explicit index sums.
inline Matrix trace_out_field(const Matrix& rho, int field_dim) {
  Matrix out = Matrix::Zero(2, 2);
  for (int q = 0; q < 2; ++q)
    for (int r = 0; r < 2; ++r)
      for (int n = 0; n < field_dim; ++n) out(q, r) += rho(q * field_dim + n, r * field_dim + n);
  return out;
}

inline Matrix trace_out_qubit(const Matrix& rho, int field_dim) {
  Matrix out = Matrix::Zero(field_dim, field_dim);
  for (int n = 0; n < field_dim; ++n)
    for (int m = 0; m < field_dim; ++m)
      for (int q = 0; q < 2; ++q) out(n, m) += rho(q * field_dim + n, q * field_dim + m);
  return out;
}

// Entanglement entropy of a pure bipartite state from its Schmidt values.
inline double schmidt_entropy(const Vector& psi, int field_dim) {
  Matrix m(2, field_dim);
  for (int q = 0; q < 2; ++q)
    for (int n = 0; n < field_dim; ++n) m(q, n) = psi(q * field_dim + n);
  Eigen::JacobiSVD<Matrix> svd(m);
  double s = 0.0;
  for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k) {
    const double p = svd.singularValues()(k) * svd.singularValues()(k);
    if (p > 0.0) s -= p * std::log(p);
  }
  return s;
}

inline Matrix expm(const Matrix& m) { return m.exp(); }

// W(x, p) = (1/pi) Tr[D(-beta) rho D(beta) Parity] with the displacement
// built by a matrix exponential in a space much larger than rho.
inline double wigner_displaced_parity(const Matrix& rho, double x, double p,
                                      int big_n_max) {
  const Complex beta = Complex(x, p) / std::numbers::sqrt2;
  const Matrix a = lowering(big_n_max);
  const Matrix d = expm(-beta * a.adjoint() + std::conj(beta) * a);
  Matrix padded = Matrix::Zero(big_n_max + 1, big_n_max + 1);
  padded.topLeftCorner(rho.rows(), rho.cols()) = rho;
  const Matrix shifted = d * padded * d.adjoint();
  double w = 0.0;
  for (int j = 0; j <= big_n_max; ++j) w += (j % 2 == 0 ? 1.0 : -1.0) * shifted(j, j).real();
  return w / std::numbers::pi;
}

// Even cat (|b> + |-b>)/N for real b, closed form.
inline double wigner_even_cat(double b, double x, double p) {
  const double x0 = std::numbers::sqrt2 * b;
  const double norm2 = 2.0 * (1.0 + std::exp(-2.0 * b * b));
  const double g = std::exp(-(x - x0) * (x - x0) - p * p) +
                   std::exp(-(x + x0) * (x + x0) - p * p) +
                   2.0 * std::exp(-x * x - p * p) * std::cos(2.0 * x0 * p);
  return g / (std::numbers::pi * norm2);
}

// Resonant JC inversion summed directly with log-factorial weights.
inline double jc_inversion(double t, double nbar, double lambda, int terms = 400) {
  double s = 0.0;
  for (int n = 0; n < terms; ++n) {
    s += poisson(nbar, n) * std::cos(2.0 * lambda * std::sqrt(n + 1.0) * t);
  }
  return s;
}

// Fixed-step RK4 for psi' = f(t, psi).
inline Vector rk4(const std::function<Vector(double, const Vector&)>& f, Vector psi,
                  double t0, double t1, int steps) {
  const double h = (t1 - t0) / steps;
  double t = t0;
  for (int k = 0; k < steps; ++k) {
    const Vector k1 = f(t, psi);
    const Vector k2 = f(t + 0.5 * h, psi + 0.5 * h * k1);
    const Vector k3 = f(t + 0.5 * h, psi + 0.5 * h * k2);
    const Vector k4 = f(t + h, psi + h * k3);
    psi += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    t += h;
  }
  return psi;
}

}  // namespace oracle
