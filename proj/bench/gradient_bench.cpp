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

// Benchmark of the three gradient paths on one mid-size problem: the serial
// reference (plain central differences), the cached parallel version, and
// the adjoint sweep. Prints timings, the parallel speedup, and the mutual
// agreement of the results.

#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#else
#include <chrono>
#endif

#include "qcool/limits.hpp"
#include "qcool/objective.hpp"
#include "qcool/operators.hpp"
#include "qcool/optimizer.hpp"

namespace {

double now_seconds() {
#ifdef _OPENMP
  return omp_get_wtime();
#else
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
#endif
}

}  // namespace

int main() {
  using namespace qcool;

  SystemSpec spec;
  spec.target_kind = SystemKind::qubit();
  spec.aux_dim = 3;
  spec.g = 1.0;
  spec.gamma = 0.01;
  spec.nbar = 0.5;

  const int segments = 8;
  const double horizon = tau_speed_limit(spec.g);
  const double coarse_dt = 0.01;  // search-grade step
  const CoolingObjective objective(spec, thermal_with_aux_ground(spec),
                                   segments, horizon, coarse_dt);

  OptimizationConfig cfg;
  cfg.objective_time = horizon;
  cfg.num_segments = segments;
  cfg.seed = 42;
  const RVector theta = random_initial_theta(objective, cfg);
  const double eps = 1e-5;

  std::printf("parameters: %d, dim: %d, segments: %d\n",
              objective.parameter_count(), spec.composite_dim(), segments);
#ifdef _OPENMP
  std::printf("openmp threads: %d\n", omp_get_max_threads());
#else
  std::printf("openmp: not enabled\n");
#endif

  double t0 = now_seconds();
  const RVector g_serial = objective.gradient_fd_serial(theta, eps);
  const double t_serial = now_seconds() - t0;

  t0 = now_seconds();
  const RVector g_par = objective.gradient_fd(theta, eps);
  const double t_par = now_seconds() - t0;

  t0 = now_seconds();
  const RVector g_adj = objective.gradient_adjoint(theta);
  const double t_adj = now_seconds() - t0;

  const double norm = g_serial.norm();
  std::printf("serial fd      : %8.3f s\n", t_serial);
  std::printf("parallel fd    : %8.3f s  (speedup %.2fx)\n", t_par,
              t_serial / t_par);
  std::printf("adjoint        : %8.3f s  (speedup %.2fx)\n", t_adj,
              t_serial / t_adj);
  std::printf("fd parallel vs serial agreement: %.3e (relative)\n",
              (g_par - g_serial).norm() / norm);
  std::printf("adjoint vs serial fd agreement : %.3e (relative)\n",
              (g_adj - g_serial).norm() / norm);
  return 0;
}
