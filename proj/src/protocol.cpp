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

#include "qcool/protocol.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qcool/operators.hpp"

namespace qcool {

void ControlProtocol::validate(int target_dim, int aux_dim) const {
  const int d = target_dim * aux_dim;
  if (!(horizon > 0.0)) {
    throw std::invalid_argument("protocol horizon must be > 0");
  }
  if (!(constraint_g > 0.0)) {
    throw std::invalid_argument("protocol constraint_g must be > 0");
  }
  if (segments.empty()) {
    throw std::invalid_argument("protocol has no segments");
  }
  double total = 0.0;
  int index = 0;
  for (const auto& seg : segments) {
    const std::string where = "segment " + std::to_string(index);
    if (seg.duration < 0.0) {
      throw std::invalid_argument(where + ": negative duration");
    }
    total += seg.duration;
    if (seg.hamiltonian.rows() != d || seg.hamiltonian.cols() != d) {
      throw std::invalid_argument(where + ": dimension != N*M");
    }
    if (hermiticity_defect(seg.hamiltonian) > kHermitianTol) {
      throw std::invalid_argument(where + ": Hamiltonian not Hermitian");
    }
    const CMatrix local_removed =
        project_out_local(seg.hamiltonian, target_dim, aux_dim);
    if ((seg.hamiltonian - local_removed).cwiseAbs().maxCoeff() > 1e-10) {
      throw std::invalid_argument(where + ": nonzero local component");
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(seg.hamiltonian,
                                              Eigen::EigenvaluesOnly);
    const double radius = es.eigenvalues().cwiseAbs().maxCoeff();
    if (radius > constraint_g * (1.0 + 1e-9)) {
      throw std::invalid_argument(where + ": spectral radius " +
                                  std::to_string(radius) + " exceeds bound " +
                                  std::to_string(constraint_g));
    }
    ++index;
  }
  if (std::abs(total - horizon) > 1e-9 * std::max(1.0, horizon)) {
    throw std::invalid_argument("segment durations sum to " +
                                std::to_string(total) + ", horizon is " +
                                std::to_string(horizon));
  }
}

ControlProtocol constant_protocol(const CMatrix& h, double horizon, double g) {
  ControlProtocol p;
  p.horizon = horizon;
  p.constraint_g = g;
  p.segments.push_back({horizon, h});
  return p;
}

ControlProtocol zero_protocol(int dim, double horizon, double g) {
  return constant_protocol(CMatrix::Zero(dim, dim), horizon, g);
}

ControlProtocol swap_protocol(const SystemSpec& spec, double horizon) {
  return constant_protocol(optimal_hamiltonian(spec).matrix(), horizon,
                           spec.g);
}

}  // namespace qcool
