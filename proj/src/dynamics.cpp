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

#include "qcool/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include <unsupported/Eigen/MatrixFunctions>

#include "qcool/operators.hpp"

namespace qcool {

DissipatorChannel::DissipatorChannel(CMatrix jump_op, double rate)
    : jump(std::move(jump_op)), rate(rate) {
  if (jump.rows() != jump.cols()) {
    throw std::invalid_argument("jump operator must be square");
  }
  if (rate < 0.0) throw std::invalid_argument("channel rate must be >= 0");
  jump_dag = jump.adjoint();
  cdag_c = jump_dag * jump;
}

CMatrix dissipator_apply(const CMatrix& c, const CMatrix& rho) {
  if (c.rows() != rho.rows() || c.cols() != rho.cols() ||
      rho.rows() != rho.cols()) {
    throw std::invalid_argument("dissipator_apply: dimension mismatch");
  }
  const CMatrix cdc = c.adjoint() * c;
  return 0.5 * (cdc * rho + rho * cdc) - c * rho * c.adjoint();
}

Liouvillian::Liouvillian(CMatrix hamiltonian,
                         std::vector<DissipatorChannel> channels)
    : h_(std::move(hamiltonian)), channels_(std::move(channels)) {
  if (hermiticity_defect(h_) > kHermitianTol) {
    throw std::invalid_argument("Liouvillian Hamiltonian is not Hermitian");
  }
  for (const auto& ch : channels_) {
    if (ch.jump.rows() != h_.rows()) {
      throw std::invalid_argument("channel dimension != Hamiltonian dimension");
    }
  }
}

void Liouvillian::apply(const CMatrix& rho, CMatrix& out, CMatrix& t1) const {
  const Complex mi(0.0, -1.0);
  out.noalias() = mi * (h_ * rho);
  out.noalias() -= mi * (rho * h_);
  for (const auto& ch : channels_) {
    t1.noalias() = ch.jump * rho;
    out.noalias() += ch.rate * (t1 * ch.jump_dag);
    t1.noalias() = ch.cdag_c * rho;
    out -= (0.5 * ch.rate) * t1;
    t1.noalias() = rho * ch.cdag_c;
    out -= (0.5 * ch.rate) * t1;
  }
}

CMatrix Liouvillian::apply(const CMatrix& rho) const {
  CMatrix out(rho.rows(), rho.cols());
  CMatrix t1(rho.rows(), rho.cols());
  apply(rho, out, t1);
  return out;
}

void Liouvillian::apply_adjoint(const CMatrix& x, CMatrix& out,
                                CMatrix& t1) const {
  const Complex pi(0.0, 1.0);
  out.noalias() = pi * (h_ * x);
  out.noalias() -= pi * (x * h_);
  for (const auto& ch : channels_) {
    t1.noalias() = ch.jump_dag * x;
    out.noalias() += ch.rate * (t1 * ch.jump);
    t1.noalias() = ch.cdag_c * x;
    out -= (0.5 * ch.rate) * t1;
    t1.noalias() = x * ch.cdag_c;
    out -= (0.5 * ch.rate) * t1;
  }
}

Liouvillian build_liouvillian(const SystemSpec& spec,
                              const CMatrix& hamiltonian) {
  spec.validate();
  const int n = spec.target_dim();
  const int m = spec.aux_dim;
  if (hamiltonian.rows() != static_cast<Eigen::Index>(n) * m ||
      hamiltonian.cols() != hamiltonian.rows()) {
    throw std::invalid_argument("build_liouvillian: Hamiltonian dim != N*M");
  }
  std::vector<DissipatorChannel> channels;
  const CMatrix sigma = lowering_operator(spec.target_kind);
  const double down = spec.gamma * (1.0 + spec.nbar);
  const double up = spec.gamma * spec.nbar;
  if (down > 0.0) channels.emplace_back(embed_target(sigma, m), down);
  if (up > 0.0) channels.emplace_back(embed_target(sigma.adjoint(), m), up);
  if (spec.kappa > 0.0) {
    // Zero-temperature ladder decay of the auxiliary.
    const CMatrix aux_lower = lowering_operator(SystemKind::oscillator(m));
    channels.emplace_back(embed_aux(aux_lower, n), spec.kappa);
  }
  return Liouvillian(hamiltonian, std::move(channels));
}

double ground_population(const CMatrix& rho, int target_dim, int aux_dim) {
  if (rho.rows() != rho.cols() ||
      rho.rows() != static_cast<Eigen::Index>(target_dim) * aux_dim) {
    throw std::invalid_argument("ground_population: dimension mismatch");
  }
  double pg = 0.0;
  for (int j = 0; j < aux_dim; ++j) pg += rho(j, j).real();
  return pg;
}

IntegrationError::IntegrationError(double time, const std::string& what)
    : std::runtime_error(what), time_(time) {}

double default_step(const SystemSpec& spec) {
  const double fastest =
      std::max({spec.gamma * (1.0 + spec.nbar), spec.kappa, spec.g});
  return std::min(1e-3 / spec.g, 1e-2 / fastest);
}

// The generator is constant within a segment, so classical RK4 is exactly
// the degree-4 Taylor polynomial of exp(h L); the powers L^k rho are
// accumulated directly.
void taylor4_step(const Liouvillian& liou, double h, CMatrix& rho, CMatrix& k1,
                  CMatrix& k2, CMatrix& t1) {
  liou.apply(rho, k1, t1);
  rho += h * k1;
  liou.apply(k1, k2, t1);
  rho += (h * h / 2.0) * k2;
  liou.apply(k2, k1, t1);
  rho += (h * h * h / 6.0) * k1;
  liou.apply(k1, k2, t1);
  rho += (h * h * h * h / 24.0) * k2;
  rho = 0.5 * (rho + rho.adjoint()).eval();
}

void taylor4_step_adjoint(const Liouvillian& liou, double h, CMatrix& x,
                          CMatrix& k1, CMatrix& k2, CMatrix& t1) {
  liou.apply_adjoint(x, k1, t1);
  x += h * k1;
  liou.apply_adjoint(k1, k2, t1);
  x += (h * h / 2.0) * k2;
  liou.apply_adjoint(k2, k1, t1);
  x += (h * h * h / 6.0) * k1;
  liou.apply_adjoint(k1, k2, t1);
  x += (h * h * h * h / 24.0) * k2;
  x = 0.5 * (x + x.adjoint()).eval();
}

namespace {

void check_sample(const CMatrix& rho, double t) {
  const double trace_err = std::abs(rho.trace() - Complex(1.0, 0.0));
  if (trace_err > kTraceTol) {
    throw IntegrationError(t, "trace deviates from 1 by " +
                                  std::to_string(trace_err) + " at t = " +
                                  std::to_string(t));
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho, Eigen::EigenvaluesOnly);
  const double min_eig = es.eigenvalues().minCoeff();
  if (min_eig < -1e-8) {
    throw IntegrationError(t, "negative eigenvalue " +
                                  std::to_string(min_eig) + " at t = " +
                                  std::to_string(t));
  }
}

}  // namespace

Trajectory evolve(const DensityMatrix& rho0, const ControlProtocol& protocol,
                  const SystemSpec& spec, double sample_dt,
                  const EvolveOptions& options) {
  spec.validate();
  const int n = spec.target_dim();
  const int m = spec.aux_dim;
  const int dim = n * m;
  if (rho0.dim() != dim) {
    throw std::invalid_argument("evolve: initial state dim != N*M");
  }
  if (!(protocol.horizon > 0.0)) {
    throw std::invalid_argument("evolve: horizon must be > 0");
  }
  if (!(sample_dt > 0.0)) {
    throw std::invalid_argument("evolve: sample_dt must be > 0");
  }
  double total = 0.0;
  for (const auto& seg : protocol.segments) {
    if (seg.duration < 0.0) {
      throw std::invalid_argument("evolve: negative segment duration");
    }
    if (seg.hamiltonian.rows() != dim || seg.hamiltonian.cols() != dim) {
      throw std::invalid_argument("evolve: segment dim != N*M");
    }
    total += seg.duration;
  }
  if (std::abs(total - protocol.horizon) >
      1e-9 * std::max(1.0, protocol.horizon)) {
    throw std::invalid_argument("evolve: durations do not sum to horizon");
  }

  const double dt = options.dt > 0.0 ? options.dt : default_step(spec);
  const double horizon = protocol.horizon;

  // Event grid: segment boundaries plus the uniform sample times, merged.
  // Both families are hit exactly; duplicates are fused.
  std::vector<double> events;
  double edge = 0.0;
  events.push_back(0.0);
  for (const auto& seg : protocol.segments) {
    edge += seg.duration;
    events.push_back(std::min(edge, horizon));
  }
  for (long k = 1; static_cast<double>(k) * sample_dt < horizon; ++k) {
    events.push_back(static_cast<double>(k) * sample_dt);
  }
  events.push_back(horizon);
  std::sort(events.begin(), events.end());
  const double fuse = 1e-12 * std::max(1.0, horizon);
  events.erase(std::unique(events.begin(), events.end(),
                           [fuse](double a, double b) {
                             return std::abs(a - b) <= fuse;
                           }),
               events.end());

  auto is_sample = [&](double t) {
    if (std::abs(t - horizon) <= fuse || std::abs(t) <= fuse) return true;
    const double k = std::round(t / sample_dt);
    return std::abs(k * sample_dt - t) <= fuse;
  };

  Trajectory traj;
  CMatrix rho = rho0.matrix();
  CMatrix k1(dim, dim), k2(dim, dim), t1(dim, dim);

  auto record = [&](double t) {
    if (options.validate_samples) check_sample(rho, t);
    traj.times.push_back(t);
    traj.ground_pop.push_back(ground_population(rho, n, m));
    if (options.store_states) traj.states.push_back(rho);
  };

  record(0.0);

  std::size_t seg_index = 0;
  double seg_end = protocol.segments.empty()
                       ? horizon
                       : protocol.segments[0].duration;
  for (std::size_t e = 1; e < events.size(); ++e) {
    const double t_a = events[e - 1];
    const double t_b = events[e];
    // Advance past zero-length segments so the right generator is active.
    while (seg_index + 1 < protocol.segments.size() &&
           t_a >= seg_end - fuse) {
      ++seg_index;
      seg_end += protocol.segments[seg_index].duration;
    }
    const Liouvillian liou =
        build_liouvillian(spec, protocol.segments[seg_index].hamiltonian);
    const double span = t_b - t_a;
    const long steps = std::max(1L, static_cast<long>(std::ceil(span / dt)));
    const double h = span / static_cast<double>(steps);
    for (long s = 0; s < steps; ++s) taylor4_step(liou, h, rho, k1, k2, t1);
    if (is_sample(t_b)) record(t_b);
  }

  traj.final_state = DensityMatrix(rho).matrix();
  return traj;
}

CMatrix liouvillian_superoperator(const Liouvillian& liou) {
  const int d = liou.dim();
  const CMatrix id = CMatrix::Identity(d, d);
  const CMatrix& h = liou.hamiltonian();
  const Complex mi(0.0, -1.0);
  // Column-stacking convention: vec(A X B) = (B^T kron A) vec(X).
  CMatrix sup = mi * (kron(id, h) - kron(h.transpose(), id));
  for (const auto& ch : liou.channels()) {
    sup -= (0.5 * ch.rate) *
           (kron(id, ch.cdag_c) + kron(ch.cdag_c.transpose(), id));
    sup += ch.rate * kron(ch.jump.conjugate(), ch.jump);
  }
  return sup;
}

CMatrix propagate_expm(const Liouvillian& liou, const CMatrix& rho0,
                       double t) {
  const int d = liou.dim();
  if (rho0.rows() != d || rho0.cols() != d) {
    throw std::invalid_argument("propagate_expm: dimension mismatch");
  }
  const CMatrix sup = (liouvillian_superoperator(liou) * t).exp();
  const Eigen::Map<const CVector> v(rho0.data(), d * d);
  const CVector out = sup * v;
  return Eigen::Map<const CMatrix>(out.data(), d, d);
}

}  // namespace qcool
