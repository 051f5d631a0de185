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

#include "aapt/channel.hpp"

#include <cmath>

#include "aapt/errors.hpp"
#include "aapt/rng.hpp"

namespace aapt {

KrausChannel::KrausChannel(Index dim_in, std::vector<Matrix> operators_in)
    : dim(dim_in), operators(std::move(operators_in)) {
  if (dim < 1) {
    throw DomainError("KrausChannel: dimension must be positive");
  }
  if (operators.empty()) {
    throw ValidationError("KrausChannel: operator list must be nonempty");
  }
  Matrix completeness = Matrix::Zero(dim, dim);
  for (const Matrix& op : operators) {
    if (op.rows() != dim || op.cols() != dim) {
      throw DimensionError("KrausChannel: operator dimension mismatch");
    }
    completeness += op.adjoint() * op;
  }
  const HermitianEigenDecomposition eig = eigh(hermitian_part(completeness));
  if (eig.eigenvalues[0] > 1.0 + kValidationTol) {
    throw ValidationError("KrausChannel: sum A_k^dagger A_k exceeds the identity");
  }
}

ProcessMatrix::ProcessMatrix(Index dimA_in, Matrix x_in) : dimA(dimA_in), X(std::move(x_in)) {
  if (dimA < 1) {
    throw DomainError("ProcessMatrix: dimension must be positive");
  }
  if (X.rows() != dimA * dimA || X.cols() != dimA * dimA) {
    throw DimensionError("ProcessMatrix: matrix is not dA^2 x dA^2");
  }
  if ((X - X.adjoint()).norm() > kValidationTol) {
    throw ValidationError("ProcessMatrix: matrix is not Hermitian within tolerance");
  }
  const HermitianEigenDecomposition eig = eigh(X);
  if (eig.eigenvalues[eig.eigenvalues.size() - 1] < -1e-10) {
    throw ValidationError("ProcessMatrix: matrix has a negative eigenvalue beyond tolerance");
  }
  traceMap = partial_trace_first(X, dimA, dimA);
}

KrausChannel phase_damping(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw DomainError("phase_damping: lambda must lie in [0, 1]");
  }
  Matrix a1 = Matrix::Zero(2, 2);
  a1(0, 0) = 1.0;
  a1(1, 1) = std::sqrt(1.0 - lambda);
  Matrix a2 = Matrix::Zero(2, 2);
  a2(1, 1) = std::sqrt(lambda);
  return KrausChannel(2, {a1, a2});
}

ProcessMatrix kraus_to_process(const KrausChannel& channel) {
  const Index d = channel.dim;
  // X = sum_k w_k w_k^dagger with w_k = sum_i (A_k|i>) (x) |i>, which equals
  // sum_{ij} E(|i><j|) (x) |i><j| entrywise.
  Matrix x = Matrix::Zero(d * d, d * d);
  for (const Matrix& op : channel.operators) {
    Vector w(d * d);
    for (Index a = 0; a < d; ++a) {
      for (Index i = 0; i < d; ++i) {
        w[a * d + i] = op(a, i);
      }
    }
    x += w * w.adjoint();
  }
  return ProcessMatrix(d, hermitian_part(x));
}

KrausChannel process_to_kraus(const ProcessMatrix& process) {
  const Index d = process.dimA;
  const HermitianEigenDecomposition eig = eigh(process.X);
  std::vector<Matrix> ops;
  for (Index k = 0; k < eig.eigenvalues.size(); ++k) {
    if (eig.eigenvalues[k] <= 1e-12) {
      continue;
    }
    const double scale = std::sqrt(eig.eigenvalues[k]);
    Matrix op(d, d);
    for (Index a = 0; a < d; ++a) {
      for (Index i = 0; i < d; ++i) {
        op(a, i) = scale * eig.eigenvectors(a * d + i, k);
      }
    }
    ops.push_back(std::move(op));
  }
  if (ops.empty()) {
    ops.push_back(Matrix::Zero(d, d));
  }
  return KrausChannel(d, std::move(ops));
}

Matrix apply_channel_kraus(const KrausChannel& channel, const Matrix& rho) {
  if (rho.rows() != channel.dim || rho.cols() != channel.dim) {
    throw DimensionError("apply_channel_kraus: state dimension mismatch");
  }
  Matrix out = Matrix::Zero(channel.dim, channel.dim);
  for (const Matrix& op : channel.operators) {
    out += op * rho * op.adjoint();
  }
  return out;
}

Matrix apply_process_matrix(const ProcessMatrix& process, const Matrix& rho) {
  if (rho.rows() != process.dimA || rho.cols() != process.dimA) {
    throw DimensionError("apply_process_matrix: state dimension mismatch");
  }
  return apply_process_action(process.X, process.dimA, rho);
}

TraceClass is_trace_preserving(const ProcessMatrix& process, double tol) {
  const Matrix identity = Matrix::Identity(process.dimA, process.dimA);
  if ((process.traceMap - identity).norm() <= tol) {
    return TraceClass::TP;
  }
  const HermitianEigenDecomposition eig = eigh(hermitian_part(process.traceMap));
  if (eig.eigenvalues[0] <= 1.0 + tol) {
    return TraceClass::NonTP;
  }
  return TraceClass::Invalid;
}

KrausChannel random_channel(Index d, Index rank, bool tp, std::uint64_t seed) {
  if (d < 1) {
    throw DomainError("random_channel: dimension must be positive");
  }
  if (rank < 1 || rank > d * d) {
    throw DomainError("random_channel: rank must lie in [1, d^2]");
  }
  Philox rng(seed, derive_stream(0x6368616EULL, static_cast<std::uint64_t>(d),
                                 static_cast<std::uint64_t>(rank)));

  // Stinespring: orthonormalize a (rank*d) x d Ginibre matrix; the d-column
  // isometry sliced into rank blocks gives Kraus operators with
  // sum A_k^dagger A_k = I exactly (up to QR rounding).
  Matrix ginibre(rank * d, d);
  for (Index i = 0; i < ginibre.rows(); ++i) {
    for (Index j = 0; j < d; ++j) {
      ginibre(i, j) = Complex(rng.normal(), rng.normal()) / std::sqrt(2.0);
    }
  }
  Eigen::HouseholderQR<Matrix> qr(ginibre);
  Matrix q = qr.householderQ() * Matrix::Identity(rank * d, d);
  const Matrix r = qr.matrixQR().topRows(d).triangularView<Eigen::Upper>();
  for (Index j = 0; j < d; ++j) {
    const Complex rjj = r(j, j);
    if (std::abs(rjj) > 0.0) {
      q.col(j) *= rjj / std::abs(rjj);
    }
  }

  double scale = 1.0;
  if (!tp) {
    scale = std::sqrt(0.05 + 0.9 * rng.uniform());
  }
  std::vector<Matrix> ops;
  ops.reserve(static_cast<std::size_t>(rank));
  for (Index k = 0; k < rank; ++k) {
    ops.push_back(scale * q.block(k * d, 0, d, d));
  }
  return KrausChannel(d, std::move(ops));
}

double process_distance(const ProcessMatrix& a, const ProcessMatrix& b) {
  if (a.dimA != b.dimA) {
    throw DimensionError("process_distance: dimension mismatch");
  }
  return (a.X - b.X).norm();
}

}  // namespace aapt
