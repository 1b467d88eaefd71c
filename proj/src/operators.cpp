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

#include "qcool/operators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qcool {

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

CMatrix lowering_operator(const SystemKind& kind) {
  const int d = kind.dim();
  CMatrix a = CMatrix::Zero(d, d);
  for (int n = 1; n < d; ++n) {
    a(n - 1, n) = kind.is_qubit() ? 1.0 : std::sqrt(static_cast<double>(n));
  }
  return a;
}

DensityMatrix thermal_state(const SystemKind& kind, double nbar) {
  if (nbar < 0.0) throw std::invalid_argument("nbar must be >= 0");
  const int d = kind.dim();
  const double r = nbar / (1.0 + nbar);
  // Both kinds reduce to Boltzmann weights r^n over the retained levels; for
  // a qubit this equals diag(1 - P_T, P_T) with P_T = nbar / (1 + 2 nbar).
  Eigen::VectorXd w(d);
  double p = 1.0;
  for (int n = 0; n < d; ++n) {
    w(n) = p;
    p *= r;
  }
  w /= w.sum();
  CMatrix m = CMatrix::Zero(d, d);
  m.diagonal() = w.cast<Complex>();
  return DensityMatrix(std::move(m));
}

double thermal_truncation_error(const SystemKind& kind, double nbar) {
  if (nbar < 0.0) throw std::invalid_argument("nbar must be >= 0");
  const double r = nbar / (1.0 + nbar);
  return std::pow(r, kind.dim());
}

CMatrix embed_target(const CMatrix& op, int aux_dim) {
  if (op.rows() != op.cols()) {
    throw std::invalid_argument("embed_target needs a square matrix");
  }
  if (aux_dim < 1) throw std::invalid_argument("aux_dim must be >= 1");
  return kron(op, CMatrix::Identity(aux_dim, aux_dim));
}

CMatrix embed_aux(const CMatrix& op, int target_dim) {
  if (op.rows() != op.cols()) {
    throw std::invalid_argument("embed_aux needs a square matrix");
  }
  if (target_dim < 1) throw std::invalid_argument("target_dim must be >= 1");
  return kron(CMatrix::Identity(target_dim, target_dim), op);
}

namespace {

void check_composite(const CMatrix& op, int target_dim, int aux_dim,
                     const char* who) {
  if (target_dim < 1 || aux_dim < 1 ||
      op.rows() != op.cols() ||
      op.rows() != static_cast<Eigen::Index>(target_dim) * aux_dim) {
    throw std::invalid_argument(std::string(who) +
                                ": dimension mismatch with N*M");
  }
}

}  // namespace

CMatrix partial_trace_aux(const CMatrix& op, int target_dim, int aux_dim) {
  check_composite(op, target_dim, aux_dim, "partial_trace_aux");
  CMatrix out = CMatrix::Zero(target_dim, target_dim);
  for (int m = 0; m < target_dim; ++m) {
    for (int mp = 0; mp < target_dim; ++mp) {
      Complex s = 0.0;
      for (int n = 0; n < aux_dim; ++n) {
        s += op(m * aux_dim + n, mp * aux_dim + n);
      }
      out(m, mp) = s;
    }
  }
  return out;
}

CMatrix partial_trace_target(const CMatrix& op, int target_dim, int aux_dim) {
  check_composite(op, target_dim, aux_dim, "partial_trace_target");
  CMatrix out = CMatrix::Zero(aux_dim, aux_dim);
  for (int n = 0; n < aux_dim; ++n) {
    for (int np = 0; np < aux_dim; ++np) {
      Complex s = 0.0;
      for (int m = 0; m < target_dim; ++m) {
        s += op(m * aux_dim + n, m * aux_dim + np);
      }
      out(n, np) = s;
    }
  }
  return out;
}

HermitianOperator optimal_hamiltonian(int target_dim, int aux_dim, double g) {
  if (target_dim < 2 || aux_dim < 2) {
    throw std::invalid_argument("optimal_hamiltonian needs N, M >= 2");
  }
  if (!(g > 0.0)) throw std::invalid_argument("g must be > 0");
  const int n = target_dim;
  const int m = aux_dim;
  const int dim = n * m;
  CMatrix gen = CMatrix::Zero(dim, dim);
  // First family: |0,j><j,0|, pairing aux excitations with target levels.
  for (int j = 1; j <= std::min(m - 1, n - 1); ++j) {
    gen(0 * m + j, j * m + 0) += g;
  }
  // Second family: |0,j><1,j-N+1|, reachable only when M > N.
  for (int j = n; j <= std::min(m - 1, 2 * n - 2); ++j) {
    gen(0 * m + j, 1 * m + (j - n + 1)) += g;
  }
  return HermitianOperator(gen + gen.adjoint().eval());
}

HermitianOperator optimal_hamiltonian(const SystemSpec& spec) {
  spec.validate();
  return optimal_hamiltonian(spec.target_dim(), spec.aux_dim, spec.g);
}

CMatrix project_out_local(const CMatrix& h, int target_dim, int aux_dim) {
  check_composite(h, target_dim, aux_dim, "project_out_local");
  const int dim = target_dim * aux_dim;
  // The local span {A x I} + {I x B} intersects in multiples of the
  // identity, so the projector is P1 + P2 - P_id.
  const CMatrix tr_aux = partial_trace_aux(h, target_dim, aux_dim);
  const CMatrix tr_tgt = partial_trace_target(h, target_dim, aux_dim);
  const Complex tr = h.trace();
  CMatrix out = h;
  out -= embed_target(tr_aux, aux_dim) / static_cast<double>(aux_dim);
  out -= embed_aux(tr_tgt, target_dim) / static_cast<double>(target_dim);
  out += (tr / static_cast<double>(dim)) * CMatrix::Identity(dim, dim);
  return out;
}

HermitianOperator project_out_local(const HermitianOperator& h, int target_dim,
                                    int aux_dim) {
  return HermitianOperator(project_out_local(h.matrix(), target_dim, aux_dim));
}

EigenvalueBound constraint_eigenvalue_bound(const CMatrix& h, int target_dim,
                                            int aux_dim, double g) {
  CMatrix projected = project_out_local(h, target_dim, aux_dim);
  projected = 0.5 * (projected + projected.adjoint().eval());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(projected, Eigen::EigenvaluesOnly);
  EigenvalueBound out;
  out.max_abs_eigenvalue = es.eigenvalues().cwiseAbs().maxCoeff();
  out.within_bound = out.max_abs_eigenvalue <= g * (1.0 + 1e-9);
  return out;
}

DensityMatrix thermal_with_aux_ground(const SystemSpec& spec) {
  spec.validate();
  CMatrix aux = CMatrix::Zero(spec.aux_dim, spec.aux_dim);
  aux(0, 0) = 1.0;
  return DensityMatrix(
      kron(thermal_state(spec.target_kind, spec.nbar).matrix(), aux));
}

}  // namespace qcool
