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

#include "qcool/dynamics.hpp"
#include "qcool/protocol.hpp"
#include "qcool/types.hpp"

namespace qcool {

// theta layout, per segment block of d^2 reals (d = N*M): first the d
// diagonal entries, then for each p < q (row-major) the pair
// (Re H_pq, Im H_pq). Blocks are concatenated segment by segment.

/// Number of reals parametrizing one Hermitian d x d matrix.
inline int hermitian_param_count(int dim) { return dim * dim; }

/// Hermitian matrix from one parameter block (inverse of theta_encode).
CMatrix hermitian_from_params(const double* block, int dim);

/// Flattens Hermitian segment matrices into a theta vector.
RVector theta_encode(const std::vector<CMatrix>& hams);

/// Cooling figure of merit 1 - P_g(T) as a function of the control
/// parameters, with the constraint set enforced by construction: each
/// parameter block is assembled Hermitian, its local part removed, and the
/// result rescaled by min(1, g / spectral radius). Evaluation propagates the
/// initial state through the K equal-duration segments with fixed-step RK4.
///
/// Three gradient routes are provided:
///  * gradient_fd_serial — plain central differences, one full objective
///    evaluation per perturbation; the reference implementation.
///  * gradient_fd       — the same central differences computed
///    segment-locally from cached forward/backward sweeps, one probe per
///    parameter run in an OpenMP parallel loop. Agrees with the serial
///    reference to rounding.
///  * gradient_adjoint  — exact derivative of the discrete propagation
///    (fixed-step RK4 on a constant generator equals a degree-4 Taylor
///    step, so the step derivative is a finite sum) pulled back through
///    the projection and spectral rescaling.
class CoolingObjective {
 public:
  CoolingObjective(SystemSpec spec, DensityMatrix rho0, int num_segments,
                   double horizon, double dt = 0.0);

  int parameter_count() const { return num_segments_ * block_size_; }
  int num_segments() const { return num_segments_; }
  double horizon() const { return horizon_; }
  double dt() const { return dt_; }
  const SystemSpec& spec() const { return spec_; }
  const DensityMatrix& initial_state() const { return rho0_; }

  ControlProtocol protocol(const RVector& theta) const;

  double value(const RVector& theta) const;

  RVector gradient_fd_serial(const RVector& theta, double eps) const;
  RVector gradient_fd(const RVector& theta, double eps) const;
  RVector gradient_adjoint(const RVector& theta) const;

 private:
  struct SegmentBuild;  // constrained Hamiltonian plus rescaling data

  std::vector<SegmentBuild> build_segments(const RVector& theta) const;
  double propagate_value(const std::vector<SegmentBuild>& segments) const;

  SystemSpec spec_;
  DensityMatrix rho0_;
  int num_segments_;
  double horizon_;
  double dt_;
  int dim_;
  int block_size_;
  int steps_per_segment_;
  double step_;
  CMatrix ground_projector_;
};

}  // namespace qcool
