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

#include <stdexcept>
#include <string>
#include <vector>

#include "qcool/protocol.hpp"
#include "qcool/types.hpp"

namespace qcool {

/// One Lindblad channel: jump operator c applied at the given rate.
/// c^dagger and c^dagger c are cached at construction.
struct DissipatorChannel {
  DissipatorChannel(CMatrix jump_op, double rate);

  CMatrix jump;
  CMatrix jump_dag;
  CMatrix cdag_c;
  double rate = 0.0;
};

/// D(c) rho = (c^dagger c rho + rho c^dagger c)/2 - c rho c^dagger.
CMatrix dissipator_apply(const CMatrix& c, const CMatrix& rho);

/// Generator of the master equation
///   drho/dt = -i [H, rho] - sum_k rate_k D(c_k) rho        (hbar = 1).
class Liouvillian {
 public:
  Liouvillian(CMatrix hamiltonian, std::vector<DissipatorChannel> channels);

  /// out = L[rho]. `t1` is caller-provided scratch of the same dimension, so
  /// concurrent callers each pass their own.
  void apply(const CMatrix& rho, CMatrix& out, CMatrix& t1) const;
  CMatrix apply(const CMatrix& rho) const;

  /// Hilbert-Schmidt adjoint: out = L^dagger[x]. Used for propagating
  /// observables backwards.
  void apply_adjoint(const CMatrix& x, CMatrix& out, CMatrix& t1) const;

  const CMatrix& hamiltonian() const { return h_; }
  const std::vector<DissipatorChannel>& channels() const { return channels_; }
  int dim() const { return static_cast<int>(h_.rows()); }

 private:
  CMatrix h_;
  std::vector<DissipatorChannel> channels_;
};

/// Thermal channels of the target (rates gamma (1+nbar) and gamma nbar on the
/// embedded lowering/raising operators), plus an auxiliary ladder-decay
/// channel at rate kappa when kappa > 0. Channels with zero rate are omitted.
Liouvillian build_liouvillian(const SystemSpec& spec, const CMatrix& hamiltonian);

/// Target ground-level population: sum_j <0,j| rho |0,j>.
double ground_population(const CMatrix& rho, int target_dim, int aux_dim);

/// Raised when the propagated state violates the density-matrix invariants
/// beyond tolerance; `time` names the sample at which it happened.
class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(double time, const std::string& what);
  double time() const { return time_; }

 private:
  double time_;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<double> ground_pop;
  std::vector<CMatrix> states;  // filled when EvolveOptions::store_states
  CMatrix final_state;          // passed density-matrix validation
};

struct EvolveOptions {
  double dt = 0.0;              // 0 selects the default step for the system
  bool store_states = false;
  bool validate_samples = true;
};

/// Default integration step: min(1e-3/g, 1e-2/max(gamma (1+nbar), kappa, g)).
double default_step(const SystemSpec& spec);

/// One fixed step of classical RK4 applied to the constant generator, which
/// equals the degree-4 Taylor polynomial of exp(h L) acting on rho. Updates
/// rho in place and re-symmetrizes. k1, k2, t1 are caller scratch.
void taylor4_step(const Liouvillian& liou, double h, CMatrix& rho, CMatrix& k1,
                  CMatrix& k2, CMatrix& t1);

/// The same step for the adjoint generator: x <- Taylor4(h L^dagger) x.
void taylor4_step_adjoint(const Liouvillian& liou, double h, CMatrix& x,
                          CMatrix& k1, CMatrix& k2, CMatrix& t1);

/// Propagates rho0 under the protocol with fixed-step RK4, sampling the
/// ground population every `sample_dt` (plus the final time). Segment
/// boundaries and sample times are always hit exactly; the state is
/// re-symmetrized after every step and checked against the density-matrix
/// invariants at each sample.
Trajectory evolve(const DensityMatrix& rho0, const ControlProtocol& protocol,
                  const SystemSpec& spec, double sample_dt,
                  const EvolveOptions& options = {});

/// Dense superoperator of L in the column-stacking convention, assembled
/// directly from Kronecker products. Serves as an independent cross-check of
/// the stepped integrator.
CMatrix liouvillian_superoperator(const Liouvillian& liou);

/// Propagation by the exact superoperator exponential exp(L t), for constant
/// generators. Reference path; cost grows as dim^6.
CMatrix propagate_expm(const Liouvillian& liou, const CMatrix& rho0, double t);

}  // namespace qcool
