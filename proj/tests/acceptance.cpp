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

// Acceptance gate for the toolkit. Each criterion prints exactly one
// PASS/FAIL line with the measured numbers and its tolerance. Run with a
// criterion number (1..8) or with no argument to run all of them.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "qcool/dynamics.hpp"
#include "qcool/limits.hpp"
#include "qcool/objective.hpp"
#include "qcool/operators.hpp"
#include "qcool/optimizer.hpp"
#include "qcool/protocol.hpp"

using namespace qcool;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* format, ...) {
  char buf[1024];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

SystemSpec make_spec(int n, int m, double g, double gamma, double nbar,
                     double kappa) {
  SystemSpec s;
  s.target_kind = n == 2 ? SystemKind::qubit() : SystemKind::oscillator(n);
  s.aux_dim = m;
  s.g = g;
  s.gamma = gamma;
  s.nbar = nbar;
  s.kappa = kappa;
  return s;
}

struct MinPoint {
  double value = 2.0;
  double time = 0.0;
};

MinPoint min_one_minus_pg(const Trajectory& traj) {
  MinPoint mp;
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const double v = 1.0 - traj.ground_pop[i];
    if (v < mp.value) {
      mp.value = v;
      mp.time = traj.times[i];
    }
  }
  return mp;
}

// Minimum of 1 - P_g for the pairwise-swap protocol, sampled finely.
MinPoint swap_minimum(const SystemSpec& spec, double horizon) {
  const Trajectory traj =
      evolve(thermal_with_aux_ground(spec), swap_protocol(spec, horizon), spec,
             horizon / 2000.0);
  return min_one_minus_pg(traj);
}

// Search setup shared by the optimizer criteria: 16 segments, exact
// gradients, a search-grade integrator step (results are re-evaluated at the
// fine default step inside optimize).
OptimizationConfig search_config(double objective_time, std::uint64_t seed,
                                 int max_iterations) {
  OptimizationConfig cfg;
  cfg.num_segments = 16;
  cfg.objective_time = objective_time;
  cfg.max_iterations = max_iterations;
  cfg.convergence_tol = 1e-7;
  cfg.integrator_dt = 0.01;
  cfg.gradient = GradientMethod::kAdjoint;
  cfg.seed = seed;
  return cfg;
}

// Search methodology for the optimizer criteria: five random restarts
// screened at 600 iterations, then the winner continued from its own
// parameters (fresh Hessian estimate each round) until BFGS converges or
// stops improving. Restarts alone leave the larger systems visibly short of
// their optimum; the continuation is what makes the reported numbers
// budget-independent. The screen must be deep enough to rank basins
// faithfully: at 350 iterations the two-level case still picks a shallow
// attractor 2.8% above the one it settles into by 600.
OptimizationResult converged_search(const SystemSpec& spec,
                                    const DensityMatrix& rho0, double horizon,
                                    std::uint64_t seed) {
  OptimizationConfig cfg = search_config(horizon, seed, 600);
  OptimizationResult best = optimize_multi(spec, rho0, cfg, 5);
  cfg.max_iterations = 500;
  for (int round = 0; round < 4; ++round) {
    std::vector<CMatrix> hams;
    hams.reserve(best.best_protocol.segments.size());
    for (const auto& seg : best.best_protocol.segments) {
      hams.push_back(seg.hamiltonian);
    }
    OptimizationResult r = optimize_from(spec, rho0, cfg, theta_encode(hams));
    const bool done = r.converged || r.best_pg <= best.best_pg + 1e-10;
    if (r.best_pg > best.best_pg) best = std::move(r);
    if (done) break;
  }
  return best;
}

double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

CMatrix random_hermitian(int dim, std::uint64_t seed, double scale) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-scale, scale);
  CMatrix a(dim, dim);
  for (int p = 0; p < dim; ++p) {
    for (int q = 0; q < dim; ++q) a(p, q) = Complex(u(rng), u(rng));
  }
  return 0.5 * (a + CMatrix(a.adjoint()));
}

CMatrix random_unitary(int dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n01(0.0, 1.0);
  CMatrix a(dim, dim);
  for (int p = 0; p < dim; ++p) {
    for (int q = 0; q < dim; ++q) a(p, q) = Complex(n01(rng), n01(rng));
  }
  Eigen::HouseholderQR<CMatrix> qr(a);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < dim; ++j) q.col(j) *= r(j, j) / std::abs(r(j, j));
  return q;
}

// Random member of the admissible control set: Hermitian, no local part,
// spectral radius at most g.
CMatrix constrained_random(int n, int m, double g, std::uint64_t seed) {
  CMatrix h = project_out_local(random_hermitian(n * m, seed, 1.0), n, m);
  h = 0.5 * (h + CMatrix(h.adjoint()));
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  const double rad = std::max(std::abs(es.eigenvalues().minCoeff()),
                              std::abs(es.eigenvalues().maxCoeff()));
  if (rad > g) h *= g / rad;
  return h;
}

bool criterion1(std::string& detail) {
  const auto t0 = Clock::now();
  const SystemSpec spec = make_spec(2, 3, 1.0, 0.01, 0.5, 0.0);
  const MinPoint mp = swap_minimum(spec, tau_speed_limit(spec.g));
  const double p_t = spec.nbar / (1.0 + 2.0 * spec.nbar);
  const double ref = pmin_qubit(spec.gamma, spec.g, p_t).p_min;
  const double rel = std::abs(mp.value - ref) / ref;
  const double secs = seconds_since(t0);
  detail = fmt("min 1-P_g %.4e vs closed form %.4e, rel %.2f%% (limit 5%%), "
               "%.2f s (limit 10)",
               mp.value, ref, 100.0 * rel, secs);
  return rel <= 0.05 && secs < 10.0;
}

bool criterion2(std::string& detail) {
  const auto t0 = Clock::now();
  const SystemSpec spec = make_spec(4, 7, 1.0, 0.01, 0.1, 0.0);
  const MinPoint mp = swap_minimum(spec, tau_speed_limit(spec.g));
  const double ref = pmin_oscillator(spec.gamma, spec.g, spec.nbar).p_min;
  const double rel = std::abs(mp.value - ref) / ref;
  const double secs = seconds_since(t0);
  detail = fmt("min 1-P_g %.4e vs closed form %.4e, rel %.2f%% (limit 15%%), "
               "%.2f s (limit 60)",
               mp.value, ref, 100.0 * rel, secs);
  return rel <= 0.15 && secs < 60.0;
}

bool criterion3(std::string& detail) {
  const double tau = tau_speed_limit(1.0);
  const MinPoint q = swap_minimum(make_spec(2, 3, 1.0, 0.01, 0.5, 0.0), tau);
  const MinPoint o = swap_minimum(make_spec(4, 7, 1.0, 0.01, 0.1, 0.0), tau);
  detail = fmt("optimum at %.4f tau (two-level) and %.4f tau (four-level), "
               "window [0.9, 1.0]",
               q.time / tau, o.time / tau);
  const auto inside = [&](double t) {
    return t >= 0.9 * tau - 1e-12 && t <= tau + 1e-12;
  };
  return inside(q.time) && inside(o.time);
}

bool criterion4(std::string& detail) {
  const double tau = tau_speed_limit(1.0);
  double worst = 0.0;
  const int dims[][2] = {{2, 3}, {4, 7}};
  for (const auto& d : dims) {
    for (double nbar : {0.1, 0.5, 2.0}) {
      const SystemSpec spec = make_spec(d[0], d[1], 1.0, 0.0, nbar, 0.0);
      const Trajectory traj =
          evolve(thermal_with_aux_ground(spec), swap_protocol(spec, tau), spec,
                 tau / 200.0);
      worst = std::max(worst, 1.0 - traj.ground_pop.back());
    }
  }
  detail = fmt("worst final 1-P_g %.2e across six undamped runs (limit 1e-7)",
               worst);
  return worst <= 1e-7;
}

bool criterion5(std::string& detail) {
  const auto t0 = Clock::now();
  const double tau = tau_speed_limit(1.0);
  const struct {
    int n, m;
    double nbar;
    std::uint64_t seed;
  } cases[] = {{2, 3, 0.5, 100}, {4, 4, 0.5, 200}, {4, 4, 0.1, 300}};

  bool ok = true;
  std::string gaps;
  for (const auto& c : cases) {
    const SystemSpec spec = make_spec(c.n, c.m, 1.0, 0.01, c.nbar, 0.0);
    const DensityMatrix rho0 = thermal_with_aux_ground(spec);
    const double ref = swap_minimum(spec, tau).value;
    const OptimizationResult res = converged_search(spec, rho0, tau, c.seed);
    const double opt = 1.0 - res.max_pg_over_trajectory;
    const double rel = (opt - ref) / ref;
    ok = ok && std::abs(rel) <= 0.01;
    gaps += fmt(" N%dM%d nbar %.1f: %+.2f%%;", c.n, c.m, c.nbar, 100.0 * rel);
  }
  const double secs = seconds_since(t0);
  ok = ok && secs < 1800.0;
  detail = fmt("signed gap to the swap protocol (|limit| 1%%):%s %.0f s "
               "(limit 1800)",
               gaps.c_str(), secs);
  return ok;
}

bool criterion6(std::string& detail) {
  const double tau = tau_speed_limit(1.0);
  const SystemSpec spec = make_spec(2, 3, 1.0, 0.01, 0.5, 0.0);
  const DensityMatrix rho0 = thermal_with_aux_ground(spec);
  const OptimizationResult at_tau = converged_search(spec, rho0, tau, 400);
  const OptimizationResult extended =
      converged_search(spec, rho0, 1.5 * tau, 500);
  const double min_tau = 1.0 - at_tau.max_pg_over_trajectory;
  const double min_ext = 1.0 - extended.max_pg_over_trajectory;
  detail = fmt("best 1-P_g over [0, 1.5 tau] %.4e vs tau-horizon optimum "
               "%.4e (floor: optimum - 1%%)",
               min_ext, min_tau);
  return min_ext >= 0.99 * min_tau;
}

bool criterion7(std::string& detail) {
  const double tau = tau_speed_limit(1.0);
  const double horizon = 1.5 * tau;  // the damped optimum falls past tau

  const SystemSpec damped2 = make_spec(2, 3, 1.0, 0.01, 0.5, 1.0);
  const double ref2 = swap_minimum(damped2, horizon).value;
  const double ref2_undamped =
      swap_minimum(make_spec(2, 3, 1.0, 0.01, 0.5, 0.0), tau).value;
  const OptimizationResult res2 =
      converged_search(damped2, thermal_with_aux_ground(damped2), horizon, 600);
  const double opt2 = 1.0 - res2.max_pg_over_trajectory;
  const double gap = std::abs(opt2 - ref2) / ref2;
  const double heat = std::abs(ref2 - ref2_undamped) / ref2_undamped;

  const SystemSpec damped4 = make_spec(4, 4, 1.0, 0.01, 0.5, 1.0);
  const double ref4 = swap_minimum(damped4, horizon).value;
  const OptimizationResult res4 =
      converged_search(damped4, thermal_with_aux_ground(damped4), horizon, 700);
  const double opt4 = 1.0 - res4.max_pg_over_trajectory;

  detail = fmt("two-level search gap %.2f%% (limit 2%%), damped vs undamped "
               "floor %.1f%% (limit 25%%); four-level search %.4e vs swap "
               "%.4e (must be smaller)",
               100.0 * gap, 100.0 * heat, opt4, ref4);
  return gap <= 0.02 && heat <= 0.25 && opt4 < ref4;
}

struct Battery {
  int total = 0;
  int failed = 0;
  std::string first;
  void expect(bool ok, const char* name) {
    ++total;
    if (!ok && failed++ == 0) first = name;
  }
};

bool criterion8(std::string& detail) {
  Battery b;
  const double tau = tau_speed_limit(1.0);

  {  // state invariants along a strongly damped, strongly driven evolution
    const SystemSpec spec = make_spec(2, 3, 1.0, 0.2, 0.5, 0.3);
    ControlProtocol p;
    p.horizon = 10.0;
    p.constraint_g = spec.g;
    for (int s = 0; s < 4; ++s) {
      p.segments.push_back({2.5, constrained_random(2, 3, spec.g, 800 + s)});
    }
    EvolveOptions opts;
    opts.store_states = true;
    const Trajectory traj =
        evolve(thermal_with_aux_ground(spec), p, spec, 0.5, opts);
    for (const CMatrix& rho : traj.states) {
      b.expect(std::abs(rho.trace().real() - 1.0) <= 1e-9, "trace preserved");
      b.expect(hermiticity_defect(rho) <= 1e-12, "hermiticity preserved");
      Eigen::SelfAdjointEigenSolver<CMatrix> es(rho, Eigen::EigenvaluesOnly);
      b.expect(es.eigenvalues().minCoeff() >= -1e-8, "positivity preserved");
    }
  }

  for (int n : {2, 4}) {  // thermal fixed point under null control
    const SystemSpec spec = make_spec(n, 4, 1.0, 0.05, 0.5, 0.0);
    const DensityMatrix rho0 = thermal_with_aux_ground(spec);
    const Liouvillian liou = build_liouvillian(
        spec, CMatrix::Zero(spec.composite_dim(), spec.composite_dim()));
    b.expect(max_abs(liou.apply(rho0.matrix())) <= 1e-12,
             "thermal state is stationary");
    const Trajectory traj = evolve(
        rho0, zero_protocol(spec.composite_dim(), 2.0, spec.g), spec, 0.1);
    double drift = 0.0;
    for (double pg : traj.ground_pop) {
      drift = std::max(drift, std::abs(pg - traj.ground_pop.front()));
    }
    b.expect(drift <= 1e-9, "population flat under null control");
  }

  {  // the local-part projection: idempotent and orthogonal
    const int dims[][2] = {{2, 3}, {3, 4}, {4, 4}};
    std::uint64_t seed = 900;
    for (const auto& d : dims) {
      const int n = d[0], m = d[1];
      const CMatrix h = random_hermitian(n * m, seed++, 1.0);
      const CMatrix ph = project_out_local(h, n, m);
      b.expect(max_abs(project_out_local(ph, n, m) - ph) <= 1e-12,
               "projection idempotent");
      b.expect(max_abs(partial_trace_aux(ph, n, m)) <= 1e-12,
               "target-local part removed");
      b.expect(max_abs(partial_trace_target(ph, n, m)) <= 1e-12,
               "auxiliary-local part removed");
      const CMatrix local =
          embed_target(random_hermitian(n, seed++, 1.0), m) +
          embed_aux(random_hermitian(m, seed++, 1.0), n);
      const double overlap = std::abs((local.adjoint() * ph).trace());
      b.expect(overlap <= 1e-10, "projection orthogonal to local operators");
    }
  }

  for (int n = 2; n <= 6; ++n) {  // spectral bounds of the swap generator
    for (int m = 2; m <= 11; ++m) {
      for (double g : {0.7, 1.0, 2.3}) {
        Eigen::SelfAdjointEigenSolver<CMatrix> es(
            optimal_hamiltonian(n, m, g).matrix(), Eigen::EigenvaluesOnly);
        const double rad = std::max(std::abs(es.eigenvalues().minCoeff()),
                                    std::abs(es.eigenvalues().maxCoeff()));
        b.expect(rad <= g * (1.0 + 1e-12), "swap spectrum inside the bound");
        b.expect(std::abs(rad - g) <= 1e-9 * g,
                 "swap spectrum attains the bound");
      }
    }
  }

  {  // stepped integrator against the exact exponential, NM <= 16
    const struct {
      int n, m;
      double kappa;
    } cases[] = {{2, 3, 0.5}, {4, 4, 0.0}};
    for (const auto& c : cases) {
      const SystemSpec spec = make_spec(c.n, c.m, 1.0, 0.015, 0.5, c.kappa);
      const CMatrix h = constrained_random(c.n, c.m, spec.g, 950 + c.n);
      const Liouvillian liou = build_liouvillian(spec, h);
      const DensityMatrix rho0 = thermal_with_aux_ground(spec);
      const CMatrix exact = propagate_expm(liou, rho0.matrix(), 1.2);
      const Trajectory traj =
          evolve(rho0, constant_protocol(h, 1.2, spec.g), spec, 1.2);
      b.expect(max_abs(traj.final_state - exact) <= 1e-8,
               "integrator matches the exponential");
    }
  }

  {  // majorization bound on random 4x4 states
    const CMatrix a = random_hermitian(4, 977, 1.0);
    CMatrix rho_m = a * a.adjoint();
    rho_m /= rho_m.trace().real();
    const DensityMatrix rho(rho_m);
    for (int k = 1; k <= 3; ++k) {
      const double bound = max_subspace_population(rho, k);
      bool none_exceed = true;
      for (int trial = 0; trial < 500; ++trial) {
        const CMatrix u = random_unitary(4, 2000 + 331 * k + trial);
        const CMatrix basis = u.leftCols(k);
        const double pop =
            ((basis * basis.adjoint()) * rho.matrix()).trace().real();
        none_exceed = none_exceed && pop <= bound + 1e-9;
      }
      b.expect(none_exceed, "majorization bound never exceeded");
      Eigen::SelfAdjointEigenSolver<CMatrix> es(rho.matrix());
      const CMatrix top = es.eigenvectors().rightCols(k);
      const double attained =
          ((top * top.adjoint()) * rho.matrix()).trace().real();
      b.expect(std::abs(attained - bound) <= 1e-12,
               "majorization bound attained");
    }
  }

  {  // central differences converge quadratically onto the exact gradient
    const SystemSpec spec = make_spec(2, 3, 1.0, 0.01, 0.5, 0.0);
    const CoolingObjective obj(spec, thermal_with_aux_ground(spec), 2, tau,
                               0.01);
    const int npar = obj.parameter_count();
    for (std::uint64_t seed = 41; seed < 44; ++seed) {
      OptimizationConfig cfg;
      cfg.objective_time = tau;
      cfg.num_segments = 2;
      cfg.seed = seed;
      const RVector theta = random_initial_theta(obj, cfg);
      std::mt19937_64 rng(seed + 17);
      std::normal_distribution<double> n01(0.0, 1.0);
      RVector u(npar);
      for (int i = 0; i < npar; ++i) u(i) = n01(rng);
      u /= u.norm();
      const auto dd = [&](double eps) {
        return (obj.value(theta + eps * u) - obj.value(theta - eps * u)) /
               (2.0 * eps);
      };
      const double d1 = dd(2e-2), d2 = dd(1e-2), d3 = dd(5e-3);
      if (std::abs(d2 - d3) > 1e-10) {
        const double ratio = (d1 - d2) / (d2 - d3);
        b.expect(ratio >= 3.4 && ratio <= 4.6,
                 "finite differences shrink at second order");
      }
      const double extrap = d3 + (d3 - d2) / 3.0;
      const double adj = obj.gradient_adjoint(theta).dot(u);
      b.expect(std::abs(extrap - adj) <= 1e-6 * std::max(1.0, std::abs(adj)),
               "extrapolated difference matches the exact gradient");
    }
  }

  if (b.failed == 0) {
    detail = fmt("%d properties checked, all hold", b.total);
  } else {
    detail = fmt("%d of %d properties failed, first: %s", b.failed, b.total,
                 b.first.c_str());
  }
  return b.failed == 0;
}

int run_one(int k) {
  std::string detail;
  bool ok = false;
  switch (k) {
    case 1: ok = criterion1(detail); break;
    case 2: ok = criterion2(detail); break;
    case 3: ok = criterion3(detail); break;
    case 4: ok = criterion4(detail); break;
    case 5: ok = criterion5(detail); break;
    case 6: ok = criterion6(detail); break;
    case 7: ok = criterion7(detail); break;
    case 8: ok = criterion8(detail); break;
    default: return 2;
  }
  std::printf("ACCEPTANCE %d %s: %s\n", k, ok ? "PASS" : "FAIL",
              detail.c_str());
  std::fflush(stdout);
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 2) {
    std::fprintf(stderr, "usage: %s [criterion 1-8]\n", argv[0]);
    return 2;
  }
  if (argc == 2) {
    const int k = std::atoi(argv[1]);
    if (k < 1 || k > 8) {
      std::fprintf(stderr, "criterion must be 1..8\n");
      return 2;
    }
    return run_one(k);
  }
  int rc = 0;
  for (int k = 1; k <= 8; ++k) rc |= run_one(k);
  return rc;
}
