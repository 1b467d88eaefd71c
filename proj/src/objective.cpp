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

#include "qcool/objective.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qcool/operators.hpp"

namespace qcool {

CMatrix hermitian_from_params(const double* block, int dim) {
  CMatrix h = CMatrix::Zero(dim, dim);
  int k = 0;
  for (int p = 0; p < dim; ++p) h(p, p) = block[k++];
  for (int p = 0; p < dim; ++p) {
    for (int q = p + 1; q < dim; ++q) {
      const double re = block[k++];
      const double im = block[k++];
      h(p, q) = Complex(re, im);
      h(q, p) = Complex(re, -im);
    }
  }
  return h;
}

RVector theta_encode(const std::vector<CMatrix>& hams) {
  if (hams.empty()) return RVector();
  const int dim = static_cast<int>(hams[0].rows());
  const int block = hermitian_param_count(dim);
  RVector theta(static_cast<Eigen::Index>(hams.size()) * block);
  Eigen::Index k = 0;
  for (const auto& h : hams) {
    if (h.rows() != dim || h.cols() != dim) {
      throw std::invalid_argument("theta_encode: inconsistent dimensions");
    }
    if (hermiticity_defect(h) > kHermitianTol) {
      throw std::invalid_argument("theta_encode: matrix not Hermitian");
    }
    for (int p = 0; p < dim; ++p) theta(k++) = h(p, p).real();
    for (int p = 0; p < dim; ++p) {
      for (int q = p + 1; q < dim; ++q) {
        theta(k++) = h(p, q).real();
        theta(k++) = h(p, q).imag();
      }
    }
  }
  return theta;
}

// Everything needed to evaluate one segment and to pull a Hamiltonian-space
// gradient back through the rescaling: the projected matrix, the scale
// min(1, g/specrad), and the extremal eigenpair when the rescale is active.
struct CoolingObjective::SegmentBuild {
  CMatrix h_proj;
  CMatrix h_final;
  double scale = 1.0;
  bool rescaled = false;
  double lam = 0.0;  // signed extremal eigenvalue of h_proj
  CVector v;         // its eigenvector
};

CoolingObjective::CoolingObjective(SystemSpec spec, DensityMatrix rho0,
                                   int num_segments, double horizon, double dt)
    : spec_(std::move(spec)),
      rho0_(std::move(rho0)),
      num_segments_(num_segments),
      horizon_(horizon) {
  spec_.validate();
  if (num_segments_ < 1) {
    throw std::invalid_argument("objective needs at least one segment");
  }
  if (!(horizon_ > 0.0)) {
    throw std::invalid_argument("objective horizon must be > 0");
  }
  dim_ = spec_.composite_dim();
  if (rho0_.dim() != dim_) {
    throw std::invalid_argument("objective: initial state dim != N*M");
  }
  block_size_ = hermitian_param_count(dim_);
  dt_ = dt > 0.0 ? dt : default_step(spec_);
  const double seg_duration = horizon_ / num_segments_;
  steps_per_segment_ =
      std::max(1, static_cast<int>(std::ceil(seg_duration / dt_)));
  step_ = seg_duration / steps_per_segment_;
  ground_projector_ = CMatrix::Zero(dim_, dim_);
  for (int j = 0; j < spec_.aux_dim; ++j) ground_projector_(j, j) = 1.0;
}

std::vector<CoolingObjective::SegmentBuild> CoolingObjective::build_segments(
    const RVector& theta) const {
  if (theta.size() != parameter_count()) {
    throw std::invalid_argument("theta length != K * (N*M)^2");
  }
  std::vector<SegmentBuild> out(num_segments_);
  for (int s = 0; s < num_segments_; ++s) {
    SegmentBuild& b = out[s];
    const CMatrix raw =
        hermitian_from_params(theta.data() + s * block_size_, dim_);
    b.h_proj = project_out_local(raw, spec_.target_dim(), spec_.aux_dim);
    b.h_proj = 0.5 * (b.h_proj + b.h_proj.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<CMatrix> es(b.h_proj);
    const auto& ev = es.eigenvalues();
    int top = 0;
    ev.cwiseAbs().maxCoeff(&top);
    b.lam = ev(top);
    b.v = es.eigenvectors().col(top);
    const double radius = std::abs(b.lam);
    if (radius > spec_.g) {
      b.rescaled = true;
      b.scale = spec_.g / radius;
      b.h_final = b.scale * b.h_proj;
    } else {
      b.h_final = b.h_proj;
    }
  }
  return out;
}

ControlProtocol CoolingObjective::protocol(const RVector& theta) const {
  const auto segments = build_segments(theta);
  ControlProtocol p;
  p.horizon = horizon_;
  p.constraint_g = spec_.g;
  const double seg_duration = horizon_ / num_segments_;
  for (const auto& b : segments) {
    p.segments.push_back({seg_duration, b.h_final});
  }
  return p;
}

double CoolingObjective::propagate_value(
    const std::vector<SegmentBuild>& segments) const {
  CMatrix rho = rho0_.matrix();
  CMatrix k1(dim_, dim_), k2(dim_, dim_), t1(dim_, dim_);
  for (const auto& b : segments) {
    const Liouvillian liou = build_liouvillian(spec_, b.h_final);
    for (int s = 0; s < steps_per_segment_; ++s) {
      taylor4_step(liou, step_, rho, k1, k2, t1);
    }
  }
  return 1.0 - ground_population(rho, spec_.target_dim(), spec_.aux_dim);
}

double CoolingObjective::value(const RVector& theta) const {
  return propagate_value(build_segments(theta));
}

RVector CoolingObjective::gradient_fd_serial(const RVector& theta,
                                             double eps) const {
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be > 0");
  RVector grad(theta.size());
  RVector probe = theta;
  for (Eigen::Index j = 0; j < theta.size(); ++j) {
    probe(j) = theta(j) + eps;
    const double plus = value(probe);
    probe(j) = theta(j) - eps;
    const double minus = value(probe);
    probe(j) = theta(j);
    grad(j) = (plus - minus) / (2.0 * eps);
  }
  return grad;
}

namespace {

// Tr(X rho) for Hermitian X and rho; real by symmetry.
double hs_pairing(const CMatrix& x, const CMatrix& rho) {
  return x.cwiseProduct(rho.transpose()).sum().real();
}

}  // namespace

RVector CoolingObjective::gradient_fd(const RVector& theta, double eps) const {
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be > 0");
  const auto segments = build_segments(theta);
  const int n = spec_.target_dim();
  const int m = spec_.aux_dim;

  // A perturbed parameter only changes its own segment, so each probe needs
  // one segment of propagation between the cached boundary state and the
  // observable pulled back from the end.
  std::vector<CMatrix> rho_before(num_segments_);
  std::vector<CMatrix> obs_after(num_segments_);
  {
    CMatrix rho = rho0_.matrix();
    CMatrix k1(dim_, dim_), k2(dim_, dim_), t1(dim_, dim_);
    for (int s = 0; s < num_segments_; ++s) {
      rho_before[s] = rho;
      const Liouvillian liou = build_liouvillian(spec_, segments[s].h_final);
      for (int st = 0; st < steps_per_segment_; ++st) {
        taylor4_step(liou, step_, rho, k1, k2, t1);
      }
    }
    CMatrix x = ground_projector_;
    for (int s = num_segments_ - 1; s >= 0; --s) {
      obs_after[s] = x;
      const Liouvillian liou = build_liouvillian(spec_, segments[s].h_final);
      for (int st = 0; st < steps_per_segment_; ++st) {
        taylor4_step_adjoint(liou, step_, x, k1, k2, t1);
      }
    }
  }

  RVector grad(theta.size());
  const int total = static_cast<int>(theta.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8)
#endif
  for (int j = 0; j < total; ++j) {
    const int s = j / block_size_;
    CMatrix k1(dim_, dim_), k2(dim_, dim_), t1(dim_, dim_);
    RVector block = theta.segment(s * block_size_, block_size_);
    double val[2];
    for (int side = 0; side < 2; ++side) {
      block(j % block_size_) =
          theta(j) + (side == 0 ? eps : -eps);
      const CMatrix raw = hermitian_from_params(block.data(), dim_);
      CMatrix proj = project_out_local(raw, n, m);
      proj = 0.5 * (proj + proj.adjoint()).eval();
      Eigen::SelfAdjointEigenSolver<CMatrix> es(proj, Eigen::EigenvaluesOnly);
      const double radius = es.eigenvalues().cwiseAbs().maxCoeff();
      if (radius > spec_.g) proj *= spec_.g / radius;
      const Liouvillian liou = build_liouvillian(spec_, proj);
      CMatrix rho = rho_before[s];
      for (int st = 0; st < steps_per_segment_; ++st) {
        taylor4_step(liou, step_, rho, k1, k2, t1);
      }
      val[side] = 1.0 - hs_pairing(obs_after[s], rho);
    }
    block(j % block_size_) = theta(j);
    grad(j) = (val[0] - val[1]) / (2.0 * eps);
  }
  return grad;
}

RVector CoolingObjective::gradient_adjoint(const RVector& theta) const {
  const auto segments = build_segments(theta);
  const int total_steps = num_segments_ * steps_per_segment_;
  const double h = step_;

  std::vector<Liouvillian> lious;
  lious.reserve(num_segments_);
  for (const auto& b : segments) {
    lious.push_back(build_liouvillian(spec_, b.h_final));
  }

  // Forward sweep, keeping the state before every step.
  std::vector<CMatrix> rho_at(total_steps);
  CMatrix k1(dim_, dim_), k2(dim_, dim_), t1(dim_, dim_);
  {
    CMatrix rho = rho0_.matrix();
    for (int t = 0; t < total_steps; ++t) {
      rho_at[t] = rho;
      taylor4_step(lious[t / steps_per_segment_], h, rho, k1, k2, t1);
    }
  }

  // Backward sweep. With the step written as T = sum_k (h^k/k!) L^k, the
  // derivative against the Hamiltonian inside L is
  //   dT = sum_{k=1..4} (h^k/k!) sum_{a+b=k-1} L^a dL L^b,
  // and pairing <X, L^a dL L^b rho> = <(L+)^a X, dL (L^b rho)> turns each
  // term into W_ab = -i (C - C+) with C = (L^b rho)((L+)^a X), entering the
  // Hamiltonian gradient with weight h^(a+b+1)/(a+b+1)!.
  double coef[4];
  coef[0] = h;
  coef[1] = h * h / 2.0;
  coef[2] = h * h * h / 6.0;
  coef[3] = h * h * h * h / 24.0;

  std::vector<CMatrix> g_seg(num_segments_,
                             CMatrix::Zero(dim_, dim_));
  CMatrix a_pow[4], y_pow[5];
  CMatrix x = ground_projector_;
  CMatrix c(dim_, dim_);
  for (int t = total_steps - 1; t >= 0; --t) {
    const int s = t / steps_per_segment_;
    const Liouvillian& liou = lious[s];
    a_pow[0] = rho_at[t];
    for (int b = 1; b < 4; ++b) liou.apply(a_pow[b - 1], a_pow[b], t1);
    y_pow[0] = x;
    for (int a = 1; a < 5; ++a) {
      liou.apply_adjoint(y_pow[a - 1], y_pow[a], t1);
    }
    CMatrix& g = g_seg[s];
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; a + b < 4; ++b) {
        c.noalias() = a_pow[b] * y_pow[a];
        g += (coef[a + b] * Complex(0.0, -1.0)) * (c - c.adjoint().eval());
      }
    }
    x = y_pow[0] + h * y_pow[1] + (h * h / 2.0) * y_pow[2] +
        (h * h * h / 6.0) * y_pow[3] + (h * h * h * h / 24.0) * y_pow[4];
    x = 0.5 * (x + x.adjoint()).eval();
  }

  // Pull back through rescaling and projection, then to theta coordinates.
  // The objective is 1 - <P_g, rho(T)>, hence the sign flip.
  RVector grad(theta.size());
  for (int s = 0; s < num_segments_; ++s) {
    const SegmentBuild& b = segments[s];
    CMatrix g = -g_seg[s];
    if (b.rescaled) {
      const double r = std::abs(b.lam);
      const double overlap = hs_pairing(g, b.h_proj);
      const double sgn = b.lam >= 0.0 ? 1.0 : -1.0;
      g = b.scale * g -
          (spec_.g / (r * r) * overlap * sgn) * (b.v * b.v.adjoint());
    }
    g = project_out_local(g, spec_.target_dim(), spec_.aux_dim);
    double* out = grad.data() + s * block_size_;
    int k = 0;
    for (int p = 0; p < dim_; ++p) out[k++] = g(p, p).real();
    for (int p = 0; p < dim_; ++p) {
      for (int q = p + 1; q < dim_; ++q) {
        out[k++] = 2.0 * g(p, q).real();
        out[k++] = 2.0 * g(p, q).imag();
      }
    }
  }
  return grad;
}

}  // namespace qcool
