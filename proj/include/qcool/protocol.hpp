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

#include <vector>

#include "qcool/types.hpp"

namespace qcool {

struct ProtocolSegment {
  double duration = 0.0;
  CMatrix hamiltonian;  // NM x NM, Hermitian
};

/// Piecewise-constant control schedule over [0, horizon]. Every segment
/// Hamiltonian must be purely non-local (zero component on {A tensor I} and
/// {I tensor B}) with spectral radius at most constraint_g.
struct ControlProtocol {
  double horizon = 0.0;
  double constraint_g = 0.0;
  std::vector<ProtocolSegment> segments;

  int dim() const {
    return segments.empty() ? 0 : static_cast<int>(segments[0].hamiltonian.rows());
  }

  /// Checks the structural invariants: non-negative durations summing to the
  /// horizon, Hermitian segments of the right dimension, zero local part
  /// (to 1e-10) and spectral radius <= constraint_g * (1 + 1e-9).
  /// Throws std::invalid_argument on violation.
  void validate(int target_dim, int aux_dim) const;
};

/// Single segment holding `h` for the whole horizon.
ControlProtocol constant_protocol(const CMatrix& h, double horizon, double g);

/// All-zero control (free thermalization).
ControlProtocol zero_protocol(int dim, double horizon, double g);

/// The conjectured-optimal interaction held constant over the horizon.
ControlProtocol swap_protocol(const SystemSpec& spec, double horizon);

}  // namespace qcool
