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

#include <cstdint>
#include <vector>

#include "qcool/objective.hpp"
#include "qcool/protocol.hpp"
#include "qcool/types.hpp"

namespace qcool {

enum class GradientMethod {
  kFiniteDifference,  // cached segment-local central differences (parallel)
  kAdjoint,           // exact derivative of the discrete propagation
};

struct OptimizationConfig {
  int num_segments = 16;
  double objective_time = 0.0;  // required, > 0
  int max_iterations = 200;
  double gradient_step = 1e-5;     // finite-difference probe size
  double convergence_tol = 1e-7;   // on the max-norm of the gradient
  std::uint64_t seed = 0;          // initial-guess RNG
  double integrator_dt = 0.0;      // 0 picks the default step
  GradientMethod gradient = GradientMethod::kFiniteDifference;
  double init_scale = 0.1;  // random-start entries uniform in [-scale*g, scale*g]
};

struct OptimizationResult {
  ControlProtocol best_protocol;
  double best_pg = 0.0;                  // ground population at objective_time
  std::vector<double> objective_history; // P_g after each accepted step
  int iterations = 0;
  bool converged = false;
  int parameter_count = 0;
  double final_gradient_norm = 0.0;      // max-norm
  double max_pg_over_trajectory = 0.0;   // fine re-evaluation along [0, T]
  double time_of_max_pg = 0.0;
};

/// Random starting point: num_segments matrices with real and imaginary
/// entries uniform in [-init_scale*g, init_scale*g], symmetrized and encoded
/// as theta. Deterministic in config.seed.
RVector random_initial_theta(const CoolingObjective& objective,
                             const OptimizationConfig& config);

/// BFGS with Armijo backtracking on the objective 1 - P_g(T). The search
/// runs at the configured integrator step; the returned best_pg and the
/// trajectory maximum are re-evaluated at the default fine step.
OptimizationResult optimize(const SystemSpec& spec, const DensityMatrix& rho0,
                            const OptimizationConfig& config);

/// The same search started from a caller-supplied parameter vector instead
/// of a seeded random draw (config.seed and init_scale are unused). Encoding
/// a result's best protocol with theta_encode continues that run with a
/// fresh Hessian estimate.
OptimizationResult optimize_from(const SystemSpec& spec,
                                 const DensityMatrix& rho0,
                                 const OptimizationConfig& config,
                                 const RVector& initial_theta);

/// Runs optimize with seeds config.seed + 0 .. restarts-1, keeps the run
/// with the largest best_pg.
OptimizationResult optimize_multi(const SystemSpec& spec,
                                  const DensityMatrix& rho0,
                                  const OptimizationConfig& config,
                                  int restarts);

struct ConjectureComparison {
  double pg_protocol = 0.0;   // best ground population along the trajectory
  double pg_reference = 0.0;  // same for the pairwise-swap protocol
  double delta_pg = 0.0;      // pg_reference - pg_protocol
  double time_protocol = 0.0;   // where the protocol attains its optimum
  double time_reference = 0.0;  // where the reference attains its optimum
  std::vector<double> segment_distances;  // Frobenius, after alignment
  double mean_distance = 0.0;             // duration-weighted
  double relative_mean_distance = 0.0;    // mean_distance / |reference|_F
};

/// Compares a protocol against the pairwise-swap Hamiltonian held constant
/// over the same horizon. Distances are minimized over the gauge freedom
/// that leaves the cooling problem unchanged: permutations of the auxiliary
/// basis combined with diagonal phases (acting as I tensor U conjugation).
/// Permutations are searched exhaustively (auxiliary dimension <= 8), phases
/// by coordinate ascent; the optimal gauge depends only on the
/// duration-weighted average Hamiltonian, so one global alignment serves all
/// segments.
ConjectureComparison compare_to_conjecture(const ControlProtocol& protocol,
                                           const SystemSpec& spec,
                                           const DensityMatrix& rho0);

}  // namespace qcool
