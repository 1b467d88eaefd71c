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

#include "qcool/types.hpp"

#include <cmath>

namespace qcool {

double hermiticity_defect(const CMatrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

HermitianOperator::HermitianOperator(CMatrix m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("HermitianOperator needs a square matrix");
  }
  const double defect = hermiticity_defect(m);
  if (defect > kHermitianTol) {
    throw std::invalid_argument("matrix is not Hermitian, defect " +
                                std::to_string(defect));
  }
  m_ = 0.5 * (m + m.adjoint());
}

DensityMatrix::DensityMatrix(CMatrix m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("DensityMatrix needs a square matrix");
  }
  const double defect = hermiticity_defect(m);
  if (defect > kTraceTol) {  // rounding-scale asymmetry is repaired below
    throw std::invalid_argument("density matrix is not Hermitian, defect " +
                                std::to_string(defect));
  }
  m_ = 0.5 * (m + m.adjoint());
  const double trace_err = std::abs(m_.trace() - Complex(1.0, 0.0));
  if (trace_err > kTraceTol) {
    throw std::invalid_argument("density matrix trace deviates from 1 by " +
                                std::to_string(trace_err));
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m_, Eigen::EigenvaluesOnly);
  const double min_eig = es.eigenvalues().minCoeff();
  if (min_eig < -kPositivityTol) {
    throw std::invalid_argument("density matrix has negative eigenvalue " +
                                std::to_string(min_eig));
  }
}

DensityMatrix DensityMatrix::basis_state(int dim, int index) {
  if (dim < 1 || index < 0 || index >= dim) {
    throw std::invalid_argument("basis_state index out of range");
  }
  CMatrix m = CMatrix::Zero(dim, dim);
  m(index, index) = 1.0;
  return DensityMatrix(std::move(m));
}

}  // namespace qcool
