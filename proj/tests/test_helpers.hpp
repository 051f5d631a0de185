// Copyright 2026 The aaptsim Authors
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

#include <cmath>

#include "aapt/qlinalg.hpp"
#include "aapt/rng.hpp"

namespace aapt::test {

inline Matrix random_matrix(Index rows, Index cols, Philox& rng) {
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) {
      m(i, j) = Complex(rng.normal(), rng.normal()) / std::sqrt(2.0);
    }
  }
  return m;
}

inline Matrix random_hermitian(Index d, Philox& rng) {
  return hermitian_part(random_matrix(d, d, rng));
}

inline Matrix random_unitary(Index d, Philox& rng) {
  const Matrix g = random_matrix(d, d, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(d, d);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < d; ++j) {
    if (std::abs(r(j, j)) > 0.0) {
      q.col(j) *= r(j, j) / std::abs(r(j, j));
    }
  }
  return q;
}

inline Matrix random_density(Index d, Philox& rng) {
  const Matrix g = random_matrix(d, d, rng);
  Matrix rho = g * g.adjoint();
  return hermitian_part(rho / rho.trace().real());
}

inline Matrix pauli_x() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  return m;
}

inline Matrix pauli_y() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = Complex(0.0, -1.0);
  m(1, 0) = Complex(0.0, 1.0);
  return m;
}

inline Matrix pauli_z() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  return m;
}

}  // namespace aapt::test
