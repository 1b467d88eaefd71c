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

#pragma once

#include "qcool/types.hpp"

namespace qcool {

/// Closed-form cooling limit. `validity_parameter` is the small parameter of
/// the first-order expansion; `valid` flags whether it is below 0.1. The
/// formulas are still evaluated (not rejected) outside that regime.
struct CoolingLimitReport {
  double p_min = 0.0;
  double cooling_factor = 0.0;  // pi gamma / (4 g)
  double tau = 0.0;             // pi / (2 g)
  double validity_parameter = 0.0;
  bool valid = false;
};

/// Minimum time to rotate a state into an orthogonal one under the
/// eigenvalue bound g: pi / (2 g).
double tau_speed_limit(double g);

/// Minimum excited-state population reachable for a two-level target with
/// equilibrium excited population p_t:
///   p_min = (pi gamma / 4g) p_t (1 - p_t/4) / (1 - 2 p_t).
/// Requires p_t < 1/2 (the formula is singular at the infinite-temperature
/// point).
CoolingLimitReport pmin_qubit(double gamma, double g, double p_t);

/// Minimum population left outside the ground state for an oscillator at
/// occupancy nbar:
///   p_min = (pi gamma / 4g) nbar (1 + nbar(3+nbar)/(4(1+nbar)^2)
///                                   + nbar^2(3+nbar)/(2(1+nbar)^2)).
CoolingLimitReport pmin_oscillator(double gamma, double g, double nbar);

/// Largest population any k-dimensional subspace can hold: the sum of the k
/// largest eigenvalues of rho, attained in the eigenbasis.
double max_subspace_population(const DensityMatrix& rho, int k);

}  // namespace qcool
