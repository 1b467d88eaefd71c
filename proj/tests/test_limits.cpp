// Copyright 2026 The qcool Authors
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "qcool/limits.hpp"
#include "qcool/types.hpp"

using namespace qcool;

namespace {

CMatrix random_complex(int dim, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  CMatrix a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) = Complex(dist(rng), dist(rng));
  return a;
}

DensityMatrix random_density(int dim, unsigned seed) {
  const CMatrix a = random_complex(dim, seed);
  CMatrix rho = a * a.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(rho);
}

// Haar-distributed unitary from the QR decomposition of a Gaussian matrix,
// with the phase convention fixed by the sign of R's diagonal.
CMatrix random_unitary(int dim, unsigned seed) {
  const CMatrix a = random_complex(dim, seed);
  Eigen::HouseholderQR<CMatrix> qr(a);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < dim; ++j) {
    const Complex d = r(j, j);
    q.col(j) *= d / std::abs(d);
  }
  return q;
}

}  // namespace

TEST_CASE("speed limit time") {
  CHECK(tau_speed_limit(1.0) == doctest::Approx(std::numbers::pi / 2.0));
  CHECK(tau_speed_limit(2.0) == doctest::Approx(std::numbers::pi / 4.0));
  CHECK(tau_speed_limit(std::numbers::pi / 2.0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(tau_speed_limit(0.0), std::domain_error);
  CHECK_THROWS_AS(tau_speed_limit(-1.0), std::domain_error);
}

TEST_CASE("two-level limit: reference value and report fields") {
  const CoolingLimitReport r = pmin_qubit(0.01, 1.0, 0.25);
  CHECK(r.p_min == doctest::Approx(0.0036815538909255392).epsilon(1e-14));
  CHECK(r.cooling_factor ==
        doctest::Approx(0.007853981633974483).epsilon(1e-14));
  CHECK(r.tau == doctest::Approx(std::numbers::pi / 2.0).epsilon(1e-14));
  // (gamma/g)(1 - p_t)/(1 - 2 p_t) = 0.01 * 0.75 / 0.5
  CHECK(r.validity_parameter == doctest::Approx(0.015).epsilon(1e-14));
  CHECK(r.valid);
}

TEST_CASE("two-level limit: edge cases and domain") {
  CHECK(pmin_qubit(0.0, 1.0, 0.25).p_min == 0.0);
  CHECK(pmin_qubit(0.0, 1.0, 0.25).valid);
  CHECK(pmin_qubit(0.01, 1.0, 0.0).p_min == 0.0);

  CHECK_FALSE(pmin_qubit(0.2, 1.0, 0.25).valid);  // 0.2 * 1.5 = 0.3 >= 0.1
  CHECK(pmin_qubit(0.2, 1.0, 0.25).validity_parameter ==
        doctest::Approx(0.3).epsilon(1e-14));

  CHECK_THROWS_AS(pmin_qubit(0.01, 0.0, 0.25), std::domain_error);
  CHECK_THROWS_AS(pmin_qubit(-0.01, 1.0, 0.25), std::domain_error);
  CHECK_THROWS_AS(pmin_qubit(0.01, 1.0, -0.01), std::domain_error);
  CHECK_THROWS_AS(pmin_qubit(0.01, 1.0, 0.5), std::domain_error);
  CHECK_THROWS_AS(pmin_qubit(0.01, 1.0, 0.7), std::domain_error);
}

TEST_CASE("oscillator limit: reference value and report fields") {
  const CoolingLimitReport r = pmin_oscillator(0.01, 1.0, 0.1);
  CHECK(r.p_min == doctest::Approx(0.0008457634767825416).epsilon(1e-14));
  CHECK(r.cooling_factor ==
        doctest::Approx(0.007853981633974483).epsilon(1e-14));
  CHECK(r.validity_parameter == doctest::Approx(0.011).epsilon(1e-14));
  CHECK(r.valid);

  CHECK(pmin_oscillator(0.0, 1.0, 0.5).p_min == 0.0);
  CHECK(pmin_oscillator(0.01, 1.0, 0.0).p_min == 0.0);
  CHECK_FALSE(pmin_oscillator(1.0, 1.0, 0.5).valid);  // 1.0 * 1.5 >= 0.1

  CHECK_THROWS_AS(pmin_oscillator(0.01, 0.0, 0.1), std::domain_error);
  CHECK_THROWS_AS(pmin_oscillator(-0.01, 1.0, 0.1), std::domain_error);
  CHECK_THROWS_AS(pmin_oscillator(0.01, 1.0, -0.1), std::domain_error);
}

TEST_CASE("both limits reduce to (pi gamma / 4g) * occupation at low "
          "temperature") {
  // Leading order is the cooling factor times the excited population, so the
  // two formulas must agree with each other once p_t = nbar / (1 + 2 nbar).
  const double gamma = 0.01;
  const double g = 1.0;
  const double cf = std::numbers::pi * gamma / (4.0 * g);

  CHECK(pmin_qubit(gamma, g, 1e-6).p_min / (cf * 1e-6) ==
        doctest::Approx(1.0).epsilon(1e-5));
  CHECK(pmin_oscillator(gamma, g, 1e-6).p_min / (cf * 1e-6) ==
        doctest::Approx(1.0).epsilon(1e-5));

  for (double nbar : {1e-3, 1e-4, 1e-5}) {
    const double p_t = nbar / (1.0 + 2.0 * nbar);
    const double q = pmin_qubit(gamma, g, p_t).p_min;
    const double o = pmin_oscillator(gamma, g, nbar).p_min;
    CHECK(std::abs(o / q - 1.0) <= 2.0 * nbar);
  }
}

TEST_CASE("limits scale linearly in gamma and inversely in g") {
  const std::vector<double> gammas = {0.001, 0.005, 0.01, 0.05};
  double prev_q = -1.0, prev_o = -1.0;
  for (double gamma : gammas) {
    const double q = pmin_qubit(gamma, 1.0, 0.2).p_min;
    const double o = pmin_oscillator(gamma, 1.0, 0.4).p_min;
    CHECK(q > prev_q);
    CHECK(o > prev_o);
    // p_min / gamma is constant.
    CHECK(q / gamma ==
          doctest::Approx(pmin_qubit(0.001, 1.0, 0.2).p_min / 0.001)
              .epsilon(1e-12));
    prev_q = q;
    prev_o = o;
  }

  const std::vector<double> gs = {0.5, 1.0, 2.0, 4.0};
  double prev = 1e9;
  for (double g : gs) {
    const double q = pmin_qubit(0.01, g, 0.2).p_min;
    CHECK(q < prev);
    // g * p_min is constant, and so is g * tau.
    CHECK(g * q ==
          doctest::Approx(pmin_qubit(0.01, 1.0, 0.2).p_min).epsilon(1e-12));
    CHECK(g * pmin_oscillator(0.01, g, 0.4).tau ==
          doctest::Approx(std::numbers::pi / 2.0).epsilon(1e-12));
    prev = q;
  }
}

TEST_CASE("limits grow with the equilibrium occupation") {
  double prev = -1.0;
  for (double p_t : {0.0, 0.1, 0.2, 0.3, 0.4, 0.45}) {
    const double q = pmin_qubit(0.01, 1.0, p_t).p_min;
    CHECK(q > prev);
    prev = q;
  }
  prev = -1.0;
  for (double nbar : {0.0, 0.1, 0.5, 1.0, 2.0, 5.0}) {
    const double o = pmin_oscillator(0.01, 1.0, nbar).p_min;
    CHECK(o > prev);
    prev = o;
  }
}

TEST_CASE("subspace population: known spectra") {
  CMatrix d = CMatrix::Zero(3, 3);
  d(0, 0) = 0.5;
  d(1, 1) = 0.3;
  d(2, 2) = 0.2;
  // Conjugating by a unitary must not change the answer.
  const CMatrix u = random_unitary(3, 7);
  const DensityMatrix rho(u * d * u.adjoint());
  CHECK(max_subspace_population(rho, 1) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(max_subspace_population(rho, 2) == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(max_subspace_population(rho, 3) == doctest::Approx(1.0).epsilon(1e-12));

  const int dim = 5;
  const DensityMatrix mixed(CMatrix::Identity(dim, dim) / double(dim));
  for (int k = 1; k <= dim; ++k) {
    CHECK(max_subspace_population(mixed, k) ==
          doctest::Approx(double(k) / dim).epsilon(1e-12));
  }

  CVector v = CVector::Zero(4);
  v(0) = Complex(0.6, 0.0);
  v(1) = Complex(0.0, 0.8);
  const DensityMatrix pure(v * v.adjoint());
  CHECK(max_subspace_population(pure, 1) == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(max_subspace_population(mixed, 0), std::invalid_argument);
  CHECK_THROWS_AS(max_subspace_population(mixed, dim + 1),
                  std::invalid_argument);
}

TEST_CASE("subspace population is monotone with shrinking increments") {
  const DensityMatrix rho = random_density(6, 11);
  double prev_bound = 0.0;
  double prev_inc = 2.0;
  for (int k = 1; k <= 6; ++k) {
    const double b = max_subspace_population(rho, k);
    const double inc = b - prev_bound;
    CHECK(inc >= -1e-12);
    CHECK(inc <= prev_inc + 1e-12);  // eigenvalues are sorted
    prev_bound = b;
    prev_inc = inc;
  }
  CHECK(prev_bound == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("subspace population bounds every projector and is attained") {
  const int dim = 4;
  const DensityMatrix rho = random_density(dim, 23);
  for (int k = 1; k <= 3; ++k) {
    const double bound = max_subspace_population(rho, k);

    // No rank-k projector exceeds the bound.
    double best_random = 0.0;
    for (int trial = 0; trial < 500; ++trial) {
      const CMatrix u = random_unitary(dim, 1000 + 97 * k + trial);
      const CMatrix basis = u.leftCols(k);
      const CMatrix proj = basis * basis.adjoint();
      const double pop = (proj * rho.matrix()).trace().real();
      CHECK(pop <= bound + 1e-9);
      best_random = std::max(best_random, pop);
    }
    CHECK(best_random <= bound + 1e-9);

    // An explicit witness attains it: the projector onto the top-k
    // eigenvectors. Verify the witness really is a rank-k projector before
    // trusting the population it reports.
    Eigen::SelfAdjointEigenSolver<CMatrix> es(rho.matrix());
    const CMatrix top = es.eigenvectors().rightCols(k);
    const CMatrix proj = top * top.adjoint();
    CHECK((proj * proj - proj).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((proj - proj.adjoint()).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(proj.trace().real() == doctest::Approx(double(k)).epsilon(1e-12));
    CHECK((proj * rho.matrix()).trace().real() ==
          doctest::Approx(bound).epsilon(1e-12));
  }
}
