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

#include "core/analytic.hpp"
#include "core/errors.hpp"
#include "core/observables.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace qcross;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Rotating-frame two-level system: H = (delta/2) sigma_z + (nu/2) sigma_x.
double rwa_inversion(double t, double delta, double nu) {
  oracle::Matrix h(2, 2);
  h << 0.5 * delta, 0.5 * nu, 0.5 * nu, -0.5 * delta;
  auto f = [&](double, const oracle::Vector& v) -> oracle::Vector {
    return oracle::Complex(0.0, -1.0) * (h * v);
  };
  oracle::Vector psi(2);
  psi << 1.0, 0.0;
  const oracle::Vector out = oracle::rk4(f, psi, 0.0, t, 4000);
  return std::norm(out(0)) - std::norm(out(1));
}

}  // namespace

TEST_CASE("classical-field inversion") {
  SystemParams p;
  p.nu = 8.0;
  CHECK(analytic_rabi_inversion(0.0, p) == 1.0);
  CHECK(std::abs(analytic_rabi_inversion(kPi / 8.0, p) + 1.0) < 1e-15);
  for (double t : {0.1, 0.77, 3.3}) {
    CHECK(std::abs(analytic_rabi_inversion(t, p) - std::cos(8.0 * t)) < 1e-15);
  }

  // Detuning equal to the drive: half-amplitude oscillation bottoming at 0.
  SystemParams d;
  d.nu = 0.5;
  d.omega0 = 1.5;
  const double omega_r = std::sqrt(2.0) * 0.5;
  CHECK(std::abs(analytic_rabi_inversion(kPi / omega_r, d)) < 1e-14);
  double lowest = 1.0;
  for (int k = 0; k <= 2000; ++k) lowest = std::min(lowest, analytic_rabi_inversion(0.01 * k, d));
  CHECK(lowest >= -1e-12);
  CHECK(lowest < 1e-4);
  for (double t : {0.5, 2.0, 7.5}) {
    CHECK(std::abs(analytic_rabi_inversion(t, d) - rwa_inversion(t, 0.5, 0.5)) < 1e-10);
  }
}

TEST_CASE("Jaynes-Cummings inversion sum") {
  SystemParams p;
  p.lambda = 1.0;
  p.alpha = std::sqrt(15.0);
  const int terms = jc_terms_required(p);
  CHECK(analytic_jc_inversion(0.0, p, terms) == doctest::Approx(1.0).epsilon(1e-9));
  for (double t : {0.3, 5.0, 12.2, 24.3, 29.9}) {
    CHECK(std::abs(analytic_jc_inversion(t, p, terms) - oracle::jc_inversion(t, 15.0, 1.0)) <
          1e-10);
  }
  double revival = 0.0;
  for (int k = 0; k <= 200; ++k) {
    revival = std::max(revival, std::abs(analytic_jc_inversion(23.3 + 0.01 * k, p, terms)));
  }
  CHECK(revival > 0.3);
}

TEST_CASE("Jaynes-Cummings inversion errors") {
  SystemParams p;
  p.lambda = 1.0;
  p.alpha = std::sqrt(15.0);
  CHECK_THROWS_AS(analytic_jc_inversion(1.0, p, 20), Error);
  p.omega0 = 1.1;
  CHECK_THROWS_AS(analytic_jc_inversion(1.0, p, 200), Error);
}

TEST_CASE("closed-form Jaynes-Cummings state") {
  SystemParams p;
  p.lambda = 0.8;
  p.alpha = Complex(1.2, -0.4);
  const FockCutoff c(14, 1e-7);
  const StateVector psi0 = product_state(qubit_up(), coherent_state(p.alpha, c));
  for (double t : {0.0, 0.9, 4.2}) {
    const StateVector psi = analytic_jc_state(t, p, c);
    const oracle::Vector exact =
        oracle::expm(oracle::Complex(0.0, -t) * h_jc(p, c).matrix()) * psi0.amplitudes();
    CHECK((psi.amplitudes() - exact).norm() < 1e-10);
    CHECK(std::abs(inversion(psi) - analytic_jc_inversion(t, p, jc_terms_required(p))) < 1e-6);
  }
}
