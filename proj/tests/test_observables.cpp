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


#include <cmath>
#include <random>

#include "core/errors.hpp"
#include "core/observables.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace qcross;

namespace {

constexpr double kPi = 3.14159265358979323846;

StateVector random_full_state(std::mt19937_64& rng, const FockCutoff& c) {
  std::normal_distribution<double> g;
  Vector v(c.full_dim());
  for (auto& z : v) z = Complex(g(rng), g(rng));
  return StateVector(Space::Full, v / v.norm());
}

DensityMatrix random_mixed(std::mt19937_64& rng, const FockCutoff& c, int rank) {
  Matrix m = Matrix::Zero(c.full_dim(), c.full_dim());
  std::uniform_real_distribution<double> u(0.1, 1.0);
  double total = 0.0;
  std::vector<double> w(rank);
  for (double& x : w) total += (x = u(rng));
  for (int k = 0; k < rank; ++k) {
    const Vector v = random_full_state(rng, c).amplitudes();
    m += (w[k] / total) * v * v.adjoint();
  }
  return DensityMatrix(Space::Full, m);
}

}  // namespace

TEST_CASE("inversion") {
  const FockCutoff c(20, 1e-6);
  CHECK(inversion(product_state(qubit_up(), coherent_state(2.0, c))) == doctest::Approx(1.0));
  const StateVector plus(Space::Qubit, (qubit_up().amplitudes() + qubit_down().amplitudes()) /
                                           std::sqrt(2.0));
  CHECK(std::abs(inversion(product_state(plus, fock_state(0, c)))) < 1e-15);
  CHECK(std::abs(inversion(DensityMatrix::maximally_mixed(Space::Full, c.full_dim()))) < 1e-15);
}

TEST_CASE("partial traces") {
  const FockCutoff c(6);
  const StateVector prod = product_state(qubit_up(), coherent_state(0.5, FockCutoff(6, 1e-3)));
  const Matrix rq = reduce_qubit(prod).matrix();
  CHECK(std::abs(rq(0, 0) - 1.0) < 1e-14);
  CHECK(rq.cwiseAbs().sum() == doctest::Approx(1.0));

  Vector bell = Vector::Zero(c.full_dim());
  bell(0) = 1.0 / std::sqrt(2.0);
  bell(c.field_dim() + 1) = 1.0 / std::sqrt(2.0);
  const Matrix rb = reduce_qubit(StateVector(Space::Full, bell)).matrix();
  CHECK((rb - 0.5 * Matrix::Identity(2, 2)).norm() < 1e-15);
}

TEST_CASE("property: partial traces agree with index sums and obey invariants") {
  std::mt19937_64 rng(21);
  const FockCutoff c(5);
  for (int trial = 0; trial < 20; ++trial) {
    const StateVector psi = random_full_state(rng, c);
    const Matrix rho = psi.amplitudes() * psi.amplitudes().adjoint();
    const DensityMatrix rq = reduce_qubit(psi), rf = reduce_field(psi);
    CHECK((rq.matrix() - oracle::trace_out_field(rho, 6)).norm() < 1e-13);
    CHECK((rf.matrix() - oracle::trace_out_qubit(rho, 6)).norm() < 1e-13);
    CHECK_NOTHROW(rq.check_invariants());
    CHECK_NOTHROW(rf.check_invariants());

    const DensityMatrix mixed = random_mixed(rng, c, 3);
    CHECK((reduce_qubit(mixed).matrix() - oracle::trace_out_field(mixed.matrix(), 6)).norm() <
          1e-13);
    CHECK((reduce_field(mixed).matrix() - oracle::trace_out_qubit(mixed.matrix(), 6)).norm() <
          1e-13);
    const double s = entropy_nats(reduce_qubit(mixed));
    CHECK(s >= 0.0);
    CHECK(s <= std::log(2.0) + 1e-12);
    const double z = inversion(mixed);
    CHECK(std::abs(z) <= 1.0);
    const double n = photon_number(mixed);
    CHECK(n >= 0.0);
    CHECK(n <= c.n_max());
  }
}

TEST_CASE("property: Schmidt spectra and entropies of both halves agree") {
  std::mt19937_64 rng(8);
  const FockCutoff c(7);
  for (int trial = 0; trial < 30; ++trial) {
    const StateVector psi = random_full_state(rng, c);
    Eigen::SelfAdjointEigenSolver<Matrix> eq(reduce_qubit(psi).matrix());
    Eigen::SelfAdjointEigenSolver<Matrix> ef(reduce_field(psi).matrix());
    const auto& lq = eq.eigenvalues();
    const auto& lf = ef.eigenvalues();
    const Index nf = lf.size();
    CHECK(std::abs(lq(1) - lf(nf - 1)) < 1e-10);
    CHECK(std::abs(lq(0) - lf(nf - 2)) < 1e-10);
    const double sq = entropy_nats(reduce_qubit(psi));
    CHECK(std::abs(sq - entropy_nats(reduce_field(psi))) < 1e-8);
    CHECK(std::abs(sq - oracle::schmidt_entropy(psi.amplitudes(), c.field_dim())) < 1e-10);
  }
}

TEST_CASE("entropy values") {
  const FockCutoff c(3);
  CHECK(entropy_nats(DensityMatrix::pure(product_state(qubit_up(), fock_state(2, c)))) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK(entropy_nats(DensityMatrix::maximally_mixed(Space::Qubit, 2)) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-14));
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 0.9;
  d(1, 1) = 0.1;
  CHECK(std::abs(entropy_nats(DensityMatrix(Space::Qubit, d)) - 0.3251) < 1e-4);

  d(0, 0) = 1.0 + 5e-9;
  d(1, 1) = -5e-9;
  CHECK(entropy_nats(DensityMatrix(Space::Qubit, d)) == doctest::Approx(0.0).epsilon(1e-6));
  d(0, 0) = 1.001;
  d(1, 1) = -0.001;
  try {
    entropy_nats(DensityMatrix(Space::Qubit, d));
    FAIL("expected NegativeEigenvalue");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NegativeEigenvalue);
  }
}

TEST_CASE("photon number") {
  const FockCutoff c(150);
  CHECK(photon_number(fock_state(0, c)) == 0.0);
  CHECK(photon_number(fock_state(3, c)) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(std::abs(photon_number(coherent_state(std::sqrt(50.0), c)) - 50.0) <= 1e-6);
  CHECK(std::abs(photon_number(product_state(qubit_down(), coherent_state(std::sqrt(50.0), c))) -
                 50.0) <= 1e-6);
}

TEST_CASE("Wigner function of the vacuum and of coherent states") {
  const FockCutoff c(40);
  const DensityMatrix vac = DensityMatrix::pure(fock_state(0, c));
  CHECK(std::abs(wigner_point(vac, 0.0, 0.0) - 1.0 / kPi) < 1e-15);
  for (double r : {0.5, 1.0, 2.0}) {
    for (double th : {0.0, 1.0, 2.5}) {
      const double x = r * std::cos(th), p = r * std::sin(th);
      CHECK(std::abs(wigner_point(vac, x, p) - std::exp(-r * r) / kPi) < 1e-14);
    }
  }

  const double alpha = 2.5;
  const DensityMatrix coh = DensityMatrix::pure(coherent_state(alpha, c));
  const GridSpec spec{-2.0, 8.0, -5.0, 5.0, 101};
  const WignerGrid w = wigner(coh, spec);
  Index row = 0, col = 0;
  w.values.maxCoeff(&row, &col);
  CHECK(std::abs(spec.x_at(static_cast<int>(col)) - std::sqrt(2.0) * alpha) <= 0.5 * 0.1 + 1e-12);
  CHECK(std::abs(spec.p_at(static_cast<int>(row))) < 1e-12);
  CHECK(w.min() > -1e-9);
  CHECK(std::abs(w.integral() - 1.0) < WignerGrid::kNormalizationTolerance);
}

TEST_CASE("Wigner function matches displaced parity and the cat closed form") {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g;
  const FockCutoff c(9);
  Matrix m(10, 10);
  for (Index i = 0; i < m.size(); ++i) m.data()[i] = Complex(g(rng), g(rng));
  Matrix rho = m * m.adjoint();
  rho /= rho.trace().real();
  const DensityMatrix dm(Space::Field, rho);
  for (auto [x, p] : {std::pair{0.0, 0.0}, {0.7, -1.1}, {-2.0, 0.4}, {3.0, 3.0}}) {
    CHECK(std::abs(wigner_point(dm, x, p) - oracle::wigner_displaced_parity(rho, x, p, 90)) <
          1e-11);
  }

  const double b = 2.0;
  const FockCutoff cc(40);
  const Vector cat = coherent_state(b, cc).amplitudes() + coherent_state(-b, cc).amplitudes();
  const DensityMatrix cat_rho = DensityMatrix::pure(StateVector(Space::Field, cat / cat.norm()));
  for (auto [x, p] : {std::pair{0.0, 0.0}, {0.0, 0.55}, {2.8, 0.0}, {-1.0, 1.3}}) {
    CHECK(std::abs(wigner_point(cat_rho, x, p) - oracle::wigner_even_cat(b, x, p)) < 1e-10);
  }
  const WignerGrid w = wigner(cat_rho, GridSpec{-6.0, 6.0, -6.0, 6.0, 121});
  CHECK(w.min() < -0.1);
}

TEST_CASE("Wigner function far from the origin stays accurate") {
  const FockCutoff c(54);
  const DensityMatrix coh = DensityMatrix::pure(coherent_state(std::sqrt(15.0), c));
  for (auto [x, p] : {std::pair{-8.0, -8.0}, {8.0, 8.0}, {-8.0, 0.0}}) {
    const double xs = x - std::sqrt(30.0);
    CHECK(std::abs(wigner_point(coh, x, p) - std::exp(-xs * xs - p * p) / kPi) < 1e-13);
  }
}

TEST_CASE("Wigner grid normalization guard") {
  const FockCutoff c(40, 1e-6);
  const DensityMatrix coh = DensityMatrix::pure(coherent_state(3.0, c));
  const GridSpec narrow{-1.0, 1.0, -1.0, 1.0, 21};
  try {
    wigner(coh, narrow);
    FAIL("expected GridTooCoarse");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::GridTooCoarse);
  }
  CHECK_NOTHROW(wigner(coh, narrow, 1, false));
  const DensityMatrix full = DensityMatrix::pure(product_state(qubit_up(), fock_state(0, c)));
  CHECK_THROWS_AS(wigner_point(full, 0.0, 0.0), Error);
}

TEST_CASE("Wigner grid threads give identical values") {
  const FockCutoff c(20, 1e-6);
  const DensityMatrix coh = DensityMatrix::pure(coherent_state(Complex(1.0, 1.0), c));
  const GridSpec spec{-5.0, 5.0, -5.0, 5.0, 31};
  CHECK(wigner(coh, spec, 1).values == wigner(coh, spec, 4).values);
}
