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

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qcool {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

// Tolerances shared by the value-type invariants.
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-9;
inline constexpr double kPositivityTol = 1e-9;

/// Kind of system being cooled: a two-level system or a truncated
/// harmonic oscillator represented by its lowest `levels` states.
class SystemKind {
 public:
  static SystemKind qubit() { return SystemKind(Tag::Qubit, 2); }

  static SystemKind oscillator(int levels) {
    if (levels < 2) {
      throw std::invalid_argument("oscillator needs at least 2 levels, got " +
                                  std::to_string(levels));
    }
    return SystemKind(Tag::Oscillator, levels);
  }

  bool is_qubit() const { return tag_ == Tag::Qubit; }
  bool is_oscillator() const { return tag_ == Tag::Oscillator; }
  int dim() const { return dim_; }

  friend bool operator==(const SystemKind& a, const SystemKind& b) {
    return a.tag_ == b.tag_ && a.dim_ == b.dim_;
  }

 private:
  enum class Tag { Qubit, Oscillator };
  SystemKind(Tag tag, int dim) : tag_(tag), dim_(dim) {}
  Tag tag_;
  int dim_;
};

/// Dimensions and rates defining one cooling scenario. The target system
/// (dimension N) thermalizes at rate `gamma` against a bath with occupancy
/// `nbar`; the auxiliary (dimension M) mediates the control, bounded by the
/// rate constant `g`, and may itself decay at rate `kappa`.
struct SystemSpec {
  SystemKind target_kind = SystemKind::qubit();
  int aux_dim = 2;
  double g = 1.0;
  double gamma = 0.0;
  double nbar = 0.0;
  double kappa = 0.0;

  int target_dim() const { return target_kind.dim(); }
  int composite_dim() const { return target_kind.dim() * aux_dim; }

  void validate() const {
    if (aux_dim < 2) throw std::invalid_argument("aux_dim must be >= 2");
    if (!(g > 0.0)) throw std::invalid_argument("control rate g must be > 0");
    if (gamma < 0.0) throw std::invalid_argument("gamma must be >= 0");
    if (nbar < 0.0) throw std::invalid_argument("nbar must be >= 0");
    if (kappa < 0.0) throw std::invalid_argument("kappa must be >= 0");
  }
};

/// Largest absolute deviation of `m` from its own conjugate transpose.
double hermiticity_defect(const CMatrix& m);

/// Complex square matrix constrained to be Hermitian. The constructor
/// symmetrizes (m + m^dagger)/2 to suppress rounding asymmetry and rejects
/// inputs whose asymmetry exceeds the tolerance.
class HermitianOperator {
 public:
  explicit HermitianOperator(CMatrix m);

  const CMatrix& matrix() const { return m_; }
  int dim() const { return static_cast<int>(m_.rows()); }

 private:
  CMatrix m_;
};

/// Hermitian, unit-trace, positive-semidefinite matrix. Validation happens
/// at construction; the wrapped matrix is immutable afterwards.
class DensityMatrix {
 public:
  explicit DensityMatrix(CMatrix m);

  /// Pure basis state |index><index| on a `dim`-dimensional space.
  static DensityMatrix basis_state(int dim, int index);

  const CMatrix& matrix() const { return m_; }
  int dim() const { return static_cast<int>(m_.rows()); }

 private:
  CMatrix m_;
};

}  // namespace qcool
