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

#include "qcool/limits.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qcool {

namespace {

constexpr double kValidityThreshold = 0.1;

double cooling_factor(double gamma, double g) {
  return std::numbers::pi * gamma / (4.0 * g);
}

}  // namespace

double tau_speed_limit(double g) {
  if (!(g > 0.0)) throw std::domain_error("tau_speed_limit: g must be > 0");
  return std::numbers::pi / (2.0 * g);
}

CoolingLimitReport pmin_qubit(double gamma, double g, double p_t) {
  if (!(g > 0.0)) throw std::domain_error("pmin_qubit: g must be > 0");
  if (gamma < 0.0) throw std::domain_error("pmin_qubit: gamma must be >= 0");
  if (p_t < 0.0 || p_t >= 0.5) {
    throw std::domain_error(
        "pmin_qubit: requires 0 <= p_t < 1/2 (formula singular at 1/2)");
  }
  CoolingLimitReport r;
  r.cooling_factor = cooling_factor(gamma, g);
  r.tau = tau_speed_limit(g);
  r.p_min = r.cooling_factor * p_t * (1.0 - p_t / 4.0) / (1.0 - 2.0 * p_t);
  r.validity_parameter = (gamma / g) * (1.0 - p_t) / (1.0 - 2.0 * p_t);
  r.valid = r.validity_parameter < kValidityThreshold;
  return r;
}

CoolingLimitReport pmin_oscillator(double gamma, double g, double nbar) {
  if (!(g > 0.0)) throw std::domain_error("pmin_oscillator: g must be > 0");
  if (gamma < 0.0) {
    throw std::domain_error("pmin_oscillator: gamma must be >= 0");
  }
  if (nbar < 0.0) throw std::domain_error("pmin_oscillator: nbar must be >= 0");
  CoolingLimitReport r;
  r.cooling_factor = cooling_factor(gamma, g);
  r.tau = tau_speed_limit(g);
  const double u = 1.0 + nbar;
  r.p_min = r.cooling_factor * nbar *
            (1.0 + nbar * (3.0 + nbar) / (4.0 * u * u) +
             nbar * nbar * (3.0 + nbar) / (2.0 * u * u));
  r.validity_parameter = (gamma / g) * u;
  r.valid = r.validity_parameter < kValidityThreshold;
  return r;
}

double max_subspace_population(const DensityMatrix& rho, int k) {
  const int d = rho.dim();
  if (k < 1 || k > d) {
    throw std::invalid_argument("max_subspace_population: k out of range");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho.matrix(),
                                            Eigen::EigenvaluesOnly);
  // Eigen returns eigenvalues in increasing order.
  const auto& ev = es.eigenvalues();
  double sum = 0.0;
  for (int i = 0; i < k; ++i) sum += ev(d - 1 - i);
  return sum;
}

}  // namespace qcool
