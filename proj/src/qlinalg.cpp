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

#include "aapt/qlinalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "aapt/errors.hpp"

namespace aapt {

namespace {

Index isqrt_exact(Index n, const char* what) {
  const Index root = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(n))));
  if (root * root != n) {
    throw DimensionError(std::string(what) + ": length is not a perfect square");
  }
  return root;
}

// Multiplies the column by a unit phase so its first nonzero entry is real
// positive. Zero columns are left untouched.
void fix_column_phase(Matrix& m, Index col) {
  for (Index r = 0; r < m.rows(); ++r) {
    const Complex entry = m(r, col);
    if (std::abs(entry) > 1e-12) {
      m.col(col) *= std::conj(entry) / std::abs(entry);
      return;
    }
  }
}

// Lexicographic comparison of two columns by (real, imag) pairs.
bool column_less(const Matrix& m, Index a, Index b) {
  for (Index r = 0; r < m.rows(); ++r) {
    const Complex x = m(r, a);
    const Complex y = m(r, b);
    if (x.real() != y.real()) return x.real() < y.real();
    if (x.imag() != y.imag()) return x.imag() < y.imag();
  }
  return false;
}

}  // namespace

Vector vec(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw DimensionError("vec: input must be square");
  }
  // Eigen matrices are column-major, so the flattening is already the
  // column-stacking order.
  return Eigen::Map<const Vector>(m.data(), m.size());
}

Matrix unvec(const Vector& v) {
  const Index d = isqrt_exact(v.size(), "unvec");
  return Eigen::Map<const Matrix>(v.data(), d, d);
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Matrix partial_trace_first(const Matrix& x, Index dA, Index dB) {
  if (x.rows() != dA * dB || x.cols() != dA * dB) {
    throw DimensionError("partial_trace_first: matrix is not (dA*dB) x (dA*dB)");
  }
  Matrix out = Matrix::Zero(dB, dB);
  for (Index a = 0; a < dA; ++a) {
    out += x.block(a * dB, a * dB, dB, dB);
  }
  return out;
}

Matrix partial_trace_second(const Matrix& x, Index dA, Index dB) {
  if (x.rows() != dA * dB || x.cols() != dA * dB) {
    throw DimensionError("partial_trace_second: matrix is not (dA*dB) x (dA*dB)");
  }
  Matrix out = Matrix::Zero(dA, dA);
  for (Index a = 0; a < dA; ++a) {
    for (Index c = 0; c < dA; ++c) {
      Complex sum = 0.0;
      for (Index b = 0; b < dB; ++b) {
        sum += x(a * dB + b, c * dB + b);
      }
      out(a, c) = sum;
    }
  }
  return out;
}

Matrix hermitian_part(const Matrix& g) {
  if (g.rows() != g.cols()) {
    throw DimensionError("hermitian_part: input must be square");
  }
  return 0.5 * (g + g.adjoint());
}

HermitianEigenDecomposition eigh(const Matrix& h, double tol) {
  if (h.rows() != h.cols()) {
    throw DimensionError("eigh: input must be square");
  }
  if ((h - h.adjoint()).norm() > tol) {
    throw ValidationError("eigh: input is not Hermitian within tolerance");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(h));
  if (solver.info() != Eigen::Success) {
    throw ValidationError("eigh: eigensolver failed to converge");
  }

  const Index n = h.rows();
  Matrix vectors = solver.eigenvectors();
  for (Index j = 0; j < n; ++j) {
    fix_column_phase(vectors, j);
  }

  // Descending eigenvalues; exact ties ordered by the phase-fixed vectors.
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  const RealVector values = solver.eigenvalues();
  std::sort(order.begin(), order.end(), [&](Index a, Index b) {
    if (values[a] != values[b]) return values[a] > values[b];
    return column_less(vectors, a, b);
  });

  HermitianEigenDecomposition out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (Index j = 0; j < n; ++j) {
    out.eigenvalues[j] = values[order[static_cast<std::size_t>(j)]];
    out.eigenvectors.col(j) = vectors.col(order[static_cast<std::size_t>(j)]);
  }
  return out;
}

PsdProjection psd_projection(const Matrix& h) {
  const HermitianEigenDecomposition eig = eigh(h);
  PsdProjection out;
  out.eigenvalues = eig.eigenvalues;
  out.clamped = eig.eigenvalues.cwiseMax(0.0);
  out.matrix = eig.eigenvectors * out.clamped.asDiagonal() * eig.eigenvectors.adjoint();
  // The clamped spectrum makes the reconstruction Hermitian up to rounding;
  // symmetrize so downstream hermiticity checks see an exact fixed point.
  out.matrix = hermitian_part(out.matrix);
  return out;
}

Matrix realign(const Matrix& sigma, Index dA, Index dB) {
  if (sigma.rows() != dA * dB || sigma.cols() != dA * dB) {
    throw DimensionError("realign: matrix is not (dA*dB) x (dA*dB)");
  }
  Matrix out(dA * dA, dB * dB);
  for (Index i = 0; i < dA; ++i) {
    for (Index k = 0; k < dA; ++k) {
      for (Index j = 0; j < dB; ++j) {
        for (Index l = 0; l < dB; ++l) {
          out(k * dA + i, l * dB + j) = sigma(i * dB + j, k * dB + l);
        }
      }
    }
  }
  return out;
}

Matrix apply_process_action(const Matrix& x, Index dA, const Matrix& rho) {
  if (x.rows() != dA * dA || x.cols() != dA * dA) {
    throw DimensionError("apply_process_action: process matrix is not dA^2 x dA^2");
  }
  if (rho.rows() != dA || rho.cols() != dA) {
    throw DimensionError("apply_process_action: state dimension mismatch");
  }
  Matrix out = Matrix::Zero(dA, dA);
  for (Index a = 0; a < dA; ++a) {
    for (Index c = 0; c < dA; ++c) {
      Complex sum = 0.0;
      for (Index k = 0; k < dA; ++k) {
        for (Index l = 0; l < dA; ++l) {
          sum += rho(k, l) * x(a * dA + k, c * dA + l);
        }
      }
      out(a, c) = sum;
    }
  }
  return out;
}

Matrix build_permutation_R(Index dA) {
  if (dA < 2) {
    throw DomainError("build_permutation_R: dA must be at least 2");
  }
  const Index d2 = dA * dA;
  const Index d4 = d2 * d2;
  Matrix r = Matrix::Zero(d4, d4);
  // Trace each elementary process matrix through the channel map with the
  // identity operator basis (A_j = unvec(e_j)): column m of R is the image
  // vec(Y) of vec(X) = e_m.
  for (Index m = 0; m < d4; ++m) {
    Vector unit = Vector::Zero(d4);
    unit[m] = 1.0;
    const Matrix x = unvec(unit);
    Matrix y(d2, d2);
    for (Index j = 0; j < d2; ++j) {
      Vector basis_j = Vector::Zero(d2);
      basis_j[j] = 1.0;
      y.col(j) = vec(apply_process_action(x, dA, unvec(basis_j)));
    }
    r.col(m) = vec(y);
  }
  return r;
}

}  // namespace aapt
