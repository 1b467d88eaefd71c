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

#include "qcool/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <utility>

#include "qcool/dynamics.hpp"
#include "qcool/operators.hpp"

namespace qcool {

namespace {

void validate_config(const OptimizationConfig& config) {
  if (config.num_segments < 1) {
    throw std::invalid_argument("num_segments must be >= 1");
  }
  if (!(config.objective_time > 0.0)) {
    throw std::invalid_argument("objective_time must be > 0");
  }
  if (config.max_iterations < 1) {
    throw std::invalid_argument("max_iterations must be >= 1");
  }
  if (!(config.gradient_step > 0.0)) {
    throw std::invalid_argument("gradient_step must be > 0");
  }
  if (!(config.convergence_tol > 0.0)) {
    throw std::invalid_argument("convergence_tol must be > 0");
  }
  if (!(config.init_scale > 0.0)) {
    throw std::invalid_argument("init_scale must be > 0");
  }
}

RVector eval_gradient(const CoolingObjective& objective,
                      const OptimizationConfig& config, const RVector& theta) {
  if (config.gradient == GradientMethod::kAdjoint) {
    return objective.gradient_adjoint(theta);
  }
  return objective.gradient_fd(theta, config.gradient_step);
}

}  // namespace

RVector random_initial_theta(const CoolingObjective& objective,
                             const OptimizationConfig& config) {
  const int dim = objective.spec().composite_dim();
  const double amp = config.init_scale * objective.spec().g;
  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> u(-amp, amp);
  std::vector<CMatrix> hams;
  hams.reserve(objective.num_segments());
  for (int s = 0; s < objective.num_segments(); ++s) {
    CMatrix a(dim, dim);
    for (int p = 0; p < dim; ++p) {
      for (int q = 0; q < dim; ++q) {
        const double re = u(rng);
        const double im = u(rng);
        a(p, q) = Complex(re, im);
      }
    }
    hams.push_back(0.5 * (a + a.adjoint().eval()));
  }
  return theta_encode(hams);
}

namespace {

OptimizationResult run_bfgs(const CoolingObjective& objective,
                            const SystemSpec& spec, const DensityMatrix& rho0,
                            const OptimizationConfig& config, RVector theta) {
  const Eigen::Index n = objective.parameter_count();
  double f = objective.value(theta);
  RVector grad = eval_gradient(objective, config, theta);

  OptimizationResult result;
  result.parameter_count = static_cast<int>(n);
  result.objective_history.push_back(1.0 - f);

  Eigen::MatrixXd h_inv = Eigen::MatrixXd::Identity(n, n);
  bool h_is_identity = true;
  constexpr double kArmijoC1 = 1e-4;
  constexpr double kMinStep = 1e-14;

  int iter = 0;
  for (; iter < config.max_iterations; ++iter) {
    if (grad.lpNorm<Eigen::Infinity>() <= config.convergence_tol) {
      result.converged = true;
      break;
    }
    RVector p = h_is_identity ? RVector(-grad) : RVector(-(h_inv * grad));
    double slope = grad.dot(p);
    if (slope >= 0.0) {  // curvature information went bad; restart steepest
      h_inv.setIdentity();
      h_is_identity = true;
      p = -grad;
      slope = grad.dot(p);
    }

    double alpha = 1.0;
    double f_new = 0.0;
    bool accepted = false;
    while (alpha >= kMinStep) {
      f_new = objective.value(theta + alpha * p);
      if (f_new <= f + kArmijoC1 * alpha * slope) {
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) break;  // line search exhausted; gradient norm reported

    const RVector theta_new = theta + alpha * p;
    const RVector grad_new = eval_gradient(objective, config, theta_new);
    const RVector s = alpha * p;
    const RVector y = grad_new - grad;
    const double sy = s.dot(y);
    if (sy > 1e-12 * s.norm() * y.norm()) {
      if (h_is_identity) {
        // Scale the seed matrix to the first observed curvature.
        h_inv = (sy / y.dot(y)) * Eigen::MatrixXd::Identity(n, n);
        h_is_identity = false;
      }
      const double rho_bfgs = 1.0 / sy;
      const RVector hy = h_inv * y;
      const double yhy = y.dot(hy);
      h_inv.noalias() -= rho_bfgs * (s * hy.transpose());
      h_inv.noalias() -= rho_bfgs * (hy * s.transpose());
      h_inv.noalias() +=
          (rho_bfgs * rho_bfgs * yhy + rho_bfgs) * (s * s.transpose());
    }
    theta = theta_new;
    f = f_new;
    grad = grad_new;
    result.objective_history.push_back(1.0 - f);
  }
  if (!result.converged) {
    result.converged = grad.lpNorm<Eigen::Infinity>() <= config.convergence_tol;
  }
  result.iterations = iter;
  result.final_gradient_norm = grad.lpNorm<Eigen::Infinity>();

  result.best_protocol = objective.protocol(theta);
  result.best_protocol.validate(spec.target_dim(), spec.aux_dim);

  // Search ran at the configured step; report populations from a fine pass.
  Trajectory traj = evolve(rho0, result.best_protocol, spec,
                           config.objective_time / 1000.0);
  result.best_pg = traj.ground_pop.back();
  const auto it =
      std::max_element(traj.ground_pop.begin(), traj.ground_pop.end());
  result.max_pg_over_trajectory = *it;
  result.time_of_max_pg =
      traj.times[static_cast<std::size_t>(it - traj.ground_pop.begin())];
  return result;
}

}  // namespace

OptimizationResult optimize(const SystemSpec& spec, const DensityMatrix& rho0,
                            const OptimizationConfig& config) {
  spec.validate();
  validate_config(config);
  const CoolingObjective objective(spec, rho0, config.num_segments,
                                   config.objective_time,
                                   config.integrator_dt);
  return run_bfgs(objective, spec, rho0, config,
                  random_initial_theta(objective, config));
}

OptimizationResult optimize_from(const SystemSpec& spec,
                                 const DensityMatrix& rho0,
                                 const OptimizationConfig& config,
                                 const RVector& initial_theta) {
  spec.validate();
  validate_config(config);
  const CoolingObjective objective(spec, rho0, config.num_segments,
                                   config.objective_time,
                                   config.integrator_dt);
  if (initial_theta.size() != objective.parameter_count()) {
    throw std::invalid_argument("initial_theta length mismatch");
  }
  return run_bfgs(objective, spec, rho0, config, initial_theta);
}

OptimizationResult optimize_multi(const SystemSpec& spec,
                                  const DensityMatrix& rho0,
                                  const OptimizationConfig& config,
                                  int restarts) {
  if (restarts < 1) throw std::invalid_argument("restarts must be >= 1");
  OptimizationResult best;
  bool have = false;
  for (int r = 0; r < restarts; ++r) {
    OptimizationConfig c = config;
    c.seed = config.seed + static_cast<std::uint64_t>(r);
    OptimizationResult res = optimize(spec, rho0, c);
    if (!have || res.best_pg > best.best_pg) {
      best = std::move(res);
      have = true;
    }
  }
  return best;
}

namespace {

// Score of a candidate auxiliary gauge: Re Tr(ref_p (I x D) avg (I x D)+)
// decomposed so that phase sweeps only touch an M x M coefficient table,
// Q(n', n) = sum_{m,m'} ref_p[(m,n),(m',n')] avg[(m',n'),(m,n)].
Eigen::MatrixXcd phase_table(const CMatrix& ref_p, const CMatrix& avg, int n,
                             int m) {
  Eigen::MatrixXcd q = Eigen::MatrixXcd::Zero(m, m);
  for (int nn = 0; nn < m; ++nn) {
    for (int np = 0; np < m; ++np) {
      Complex s = 0.0;
      for (int mm = 0; mm < n; ++mm) {
        for (int mp = 0; mp < n; ++mp) {
          s += ref_p(mm * m + nn, mp * m + np) * avg(mp * m + np, mm * m + nn);
        }
      }
      q(np, nn) = s;
    }
  }
  return q;
}

double phase_ascent(const Eigen::MatrixXcd& q, Eigen::VectorXd& phi) {
  const int m = static_cast<int>(q.rows());
  phi.setZero(m);
  auto score = [&]() {
    Complex s = 0.0;
    for (int a = 0; a < m; ++a) {
      for (int b = 0; b < m; ++b) {
        s += std::polar(1.0, phi(a) - phi(b)) * q(a, b);
      }
    }
    return s.real();
  };
  double best = score();
  for (int sweep = 0; sweep < 200; ++sweep) {
    for (int j = 0; j < m; ++j) {
      Complex z = 0.0;
      for (int b = 0; b < m; ++b) {
        if (b == j) continue;
        z += std::polar(1.0, -phi(b)) * q(j, b);
        z += std::conj(std::polar(1.0, phi(b)) * q(b, j));
      }
      if (std::abs(z) > 0.0) phi(j) = -std::arg(z);
    }
    const double now = score();
    if (now - best <= 1e-13 * std::max(1.0, std::abs(best))) {
      best = now;
      break;
    }
    best = now;
  }
  return best;
}

}  // namespace

ConjectureComparison compare_to_conjecture(const ControlProtocol& protocol,
                                           const SystemSpec& spec,
                                           const DensityMatrix& rho0) {
  spec.validate();
  const int n = spec.target_dim();
  const int m = spec.aux_dim;
  const int dim = n * m;
  if (protocol.dim() != dim) {
    throw std::invalid_argument("compare_to_conjecture: dimension mismatch");
  }
  const CMatrix reference = optimal_hamiltonian(spec).matrix();

  ConjectureComparison out;
  const double sample = protocol.horizon / 2000.0;
  const Trajectory t_proto = evolve(rho0, protocol, spec, sample);
  const Trajectory t_ref = evolve(
      rho0, swap_protocol(spec, protocol.horizon), spec, sample);
  const auto pick = [](const Trajectory& tr, double& pg, double& when) {
    const auto it = std::max_element(tr.ground_pop.begin(),
                                     tr.ground_pop.end());
    pg = *it;
    when = tr.times[static_cast<std::size_t>(it - tr.ground_pop.begin())];
  };
  pick(t_proto, out.pg_protocol, out.time_protocol);
  pick(t_ref, out.pg_reference, out.time_reference);
  out.delta_pg = out.pg_reference - out.pg_protocol;

  // The alignment objective is linear in the segments, so the optimal gauge
  // is determined by the duration-weighted average Hamiltonian.
  CMatrix avg = CMatrix::Zero(dim, dim);
  for (const auto& seg : protocol.segments) {
    avg += (seg.duration / protocol.horizon) * seg.hamiltonian;
  }

  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  double best_score = -1e300;
  std::vector<int> best_perm = perm;
  Eigen::VectorXd best_phi = Eigen::VectorXd::Zero(m);
  std::vector<int> p = perm;
  do {
    CMatrix pm = CMatrix::Zero(m, m);
    for (int j = 0; j < m; ++j) pm(p[j], j) = 1.0;
    const CMatrix u0 = embed_aux(pm, n);
    const CMatrix ref_p = u0.adjoint() * reference * u0;
    const Eigen::MatrixXcd q = phase_table(ref_p, avg, n, m);
    Eigen::VectorXd phi;
    const double score = phase_ascent(q, phi);
    if (score > best_score) {
      best_score = score;
      best_perm = p;
      best_phi = phi;
    }
  } while (std::next_permutation(p.begin(), p.end()));

  CMatrix pm = CMatrix::Zero(m, m);
  for (int j = 0; j < m; ++j) pm(best_perm[j], j) = 1.0;
  CMatrix d = CMatrix::Zero(m, m);
  for (int j = 0; j < m; ++j) d(j, j) = std::polar(1.0, best_phi(j));
  const CMatrix u = embed_aux((pm * d).eval(), n);

  out.segment_distances.reserve(protocol.segments.size());
  double weighted = 0.0;
  for (const auto& seg : protocol.segments) {
    const double dist = (u * seg.hamiltonian * u.adjoint() - reference).norm();
    out.segment_distances.push_back(dist);
    weighted += (seg.duration / protocol.horizon) * dist;
  }
  out.mean_distance = weighted;
  out.relative_mean_distance = weighted / reference.norm();
  return out;
}

}  // namespace qcool
