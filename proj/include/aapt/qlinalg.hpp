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

#include <Eigen/Dense>
#include <complex>

namespace aapt {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Frobenius-tolerance used for hermiticity/unitarity validation throughout.
inline constexpr double kValidationTol = 1e-10;

/// Column-major vectorization: output index runs (0,0),(1,0),...,(m-1,0),
/// (0,1),... This single convention is shared by every serialization and
/// permutation in the library.
Vector vec(const Matrix& m);

/// Inverse of vec; the input length must be a perfect square.
Matrix unvec(const Vector& v);

/// Kronecker product, first factor on the slow (major) index.
Matrix kron(const Matrix& a, const Matrix& b);

/// Tr_A: traces out the first tensor factor of a (dA*dB) x (dA*dB) matrix.
Matrix partial_trace_first(const Matrix& x, Index dA, Index dB);

/// Tr_B: traces out the second tensor factor.
Matrix partial_trace_second(const Matrix& x, Index dA, Index dB);

/// (G + G^dagger) / 2; the Frobenius-nearest Hermitian matrix.
Matrix hermitian_part(const Matrix& g);

struct HermitianEigenDecomposition {
  RealVector eigenvalues;  // sorted descending
  Matrix eigenvectors;     // unitary; column j pairs with eigenvalues[j]
};

/// Spectral decomposition of a Hermitian matrix. Eigenvalues come out
/// descending; ties are broken by lexicographic order of the phase-fixed
/// eigenvectors so the output is deterministic. Throws ValidationError if the
/// input is not Hermitian within `tol` (Frobenius).
HermitianEigenDecomposition eigh(const Matrix& h, double tol = kValidationTol);

struct PsdProjection {
  Matrix matrix;             // the Frobenius-nearest PSD matrix
  RealVector eigenvalues;    // spectrum of the Hermitian input, descending
  RealVector clamped;        // max(eigenvalue, 0), same order
};

/// Frobenius-nearest positive semidefinite matrix, obtained by clamping the
/// negative eigenvalues of a Hermitian input to zero.
PsdProjection psd_projection(const Matrix& h);

/// Block rearrangement of a bipartite operator whose singular values are the
/// operator-Schmidt coefficients. Row index enumerates the first-subsystem
/// matrix-element pair (i,k) in vec order, column index the second-subsystem
/// pair (j,l): out(k*dA+i, l*dB+j) = sigma(i*dB+j, k*dB+l).
Matrix realign(const Matrix& sigma, Index dA, Index dB);

/// Linear action of a process matrix: E(rho) = sum_{kl} rho_kl E(|k><l|),
/// where [E(|k><l|)]_{ac} = X[(a,k),(c,l)] under the output-first process
/// matrix convention. Defined for arbitrary (not necessarily PSD) X so it can
/// trace elementary matrices through the channel map.
Matrix apply_process_action(const Matrix& x, Index dA, const Matrix& rho);

/// Permutation matrix R of size dA^4 x dA^4 relating a process matrix X to
/// the column-stacked input-output table Y: with V the unitary whose columns
/// are vec(A_j) for an orthonormal operator basis {A_j}, and Y the matrix
/// whose columns are vec(E(A_j)),
///
///   kron(V^T, I) * R * vec(X) = vec(Y)   for every channel X and basis V.
///
/// R depends only on dA. It is constructed by tracing each elementary process
/// matrix through apply_process_action rather than from an index formula, so
/// it stays consistent with the vec/kron conventions by construction.
Matrix build_permutation_R(Index dA);

}  // namespace aapt
