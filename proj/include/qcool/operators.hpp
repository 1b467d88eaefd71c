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

#include "qcool/types.hpp"

namespace qcool {

// Composite-space basis ordering: |m, n> = target level m, auxiliary level n,
// with the auxiliary index varying fastest, i.e. flat index m * M + n. Every
// function below follows this convention.

/// Kronecker product a tensor b.
CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Lowering operator: [[0,1],[0,0]] for a qubit; <n-1|a|n> = sqrt(n) for an
/// oscillator truncated to `levels` states.
CMatrix lowering_operator(const SystemKind& kind);

/// Thermal equilibrium state at occupancy `nbar`. For a qubit this is
/// diag(1 - P_T, P_T) with P_T = nbar / (1 + 2 nbar); for an oscillator it is
/// the Boltzmann distribution p_n proportional to r^n, r = nbar / (1 + nbar),
/// renormalized over the retained levels.
DensityMatrix thermal_state(const SystemKind& kind, double nbar);

/// Fraction of the untruncated Boltzmann weight lost to truncation at
/// `levels` states: r^levels with r = nbar / (1 + nbar).
double thermal_truncation_error(const SystemKind& kind, double nbar);

/// op (N x N) acting on the target, extended to the composite space:
/// op tensor I_M.
CMatrix embed_target(const CMatrix& op, int aux_dim);

/// op (M x M) acting on the auxiliary, extended to the composite space:
/// I_N tensor op.
CMatrix embed_aux(const CMatrix& op, int target_dim);

/// Partial trace over the auxiliary (result N x N) and over the target
/// (result M x M).
CMatrix partial_trace_aux(const CMatrix& op, int target_dim, int aux_dim);
CMatrix partial_trace_target(const CMatrix& op, int target_dim, int aux_dim);

/// The conjectured-optimal cooling interaction G + G^dagger, where G couples
/// |0,j> <-> |j,0| for j = 1..min(M-1, N-1) and |0,j> <-> |1,j-N+1| for
/// j = N..min(M-1, 2N-2), each with coefficient g. The sum limits are clamped
/// so that every basis index stays in range for any N, M >= 2. All
/// eigenvalues lie in [-g, g].
HermitianOperator optimal_hamiltonian(int target_dim, int aux_dim, double g);
HermitianOperator optimal_hamiltonian(const SystemSpec& spec);

/// Component of `h` orthogonal (Hilbert-Schmidt) to the span of
/// {A tensor I} and {I tensor B}: subtracts everything that acts on only one
/// of the two subsystems. Idempotent and self-adjoint.
CMatrix project_out_local(const CMatrix& h, int target_dim, int aux_dim);
HermitianOperator project_out_local(const HermitianOperator& h, int target_dim,
                                    int aux_dim);

struct EigenvalueBound {
  bool within_bound = false;
  double max_abs_eigenvalue = 0.0;
};

/// Removes the local part of `h` and checks that every eigenvalue of the
/// remainder satisfies |lambda| <= g (with a 1e-9 relative slack).
EigenvalueBound constraint_eigenvalue_bound(const CMatrix& h, int target_dim,
                                            int aux_dim, double g);

/// thermal_state(target) tensor |0><0| on the auxiliary: the canonical
/// starting point of a cooling run.
DensityMatrix thermal_with_aux_ground(const SystemSpec& spec);

}  // namespace qcool
