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

#include <cstdint>
#include <utility>
#include <vector>

#include "aapt/channel.hpp"
#include "aapt/qlinalg.hpp"
#include "aapt/statesim.hpp"

namespace aapt {

/// Orthonormal Hermitian operator basis for dimension d: I/sqrt(d) first,
/// then the generalized Gell-Mann matrices (symmetric, antisymmetric,
/// diagonal) in a fixed order.
std::vector<Matrix> hermitian_operator_basis(Index d);

/// Real M x d^2 matrix whose row m holds the coordinates of P_m in the
/// hermitian_operator_basis, so Tr(P_m sigma) = (C theta(sigma))_m. Rows are
/// ordered set by set, outcome by outcome.
RealMatrix measurement_parameterization_C(const MeasurementSuite& suite);

/// Least-squares state estimate from outcome frequencies. The trace
/// coordinate is pinned to the empirical trace (exactly 1 for normalized
/// data) and the remaining d^2 - 1 coordinates solve the normal equations
/// with a pivoted factorization. The output is Hermitian by construction and
/// deliberately not projected to PSD; positivity is imposed later at the
/// process level. Cost: O(M d^4) with the design matrix built fresh, O(M d^2)
/// once it is cached, for d = dA*dB and M operators.
Matrix lre_state_tomography(const std::vector<RealVector>& frequencies,
                            const MeasurementSuite& suite);
Matrix lre_state_tomography(const MeasurementRecord& record, const MeasurementSuite& suite);

struct ChannelTable {
  Matrix yhat;                    // columns vec(E(A_j))
  std::vector<Matrix> on_basis;   // E(A_j)
};

/// Step 2: per-basis channel images E(A_j) = Tr_B[(I (x) B_j^dagger)
/// sigma_out] / s_j and the column-stacked table Y.
/// Cost: O(dA^5 dB^3) over the dA^2 basis terms.
ChannelTable reconstruct_Y(const Matrix& sigma_out_hat, const SchmidtDecomposition& schmidt,
                           double tol = 1e-12);

/// Unitary whose columns are vec(A_j) for the input state's Schmidt basis.
Matrix parameterization_V(const SchmidtDecomposition& schmidt);

/// Step 3: inverts the linear relation kron(V^T, I) R vec(G) = vec(Y), i.e.
/// G = unvec(R^T kron(V^*, I) vec(Y)). Norm-preserving in Y.
/// Cost: O(dA^6) for the basis rotation, O(dA^4) for the permutation.
Matrix linear_inversion_G(const Matrix& yhat, const Matrix& v, const Matrix& r);

struct LinearInversionRecord {
  Matrix V;
  Matrix Yhat;
  Matrix R;
  Matrix Ghat;
};

struct TssDiagnostics {
  RealVector eigs_k;      // spectrum of the Hermitian part of Ghat
  RealVector clamped_z;   // max(k_i, 0)
  Matrix ehat_matrix;     // trace map of the PSD projection
  RealVector ehat;        // its spectrum, descending
  Index positive_count = 0;  // c: eigenvalues above the relative zero threshold
  RealVector bar_e;       // non-TP path: spectrum with zeros lifted to e_c/N
  RealVector tilde_e;     // non-TP path: min(bar_e, 1)
  // [0] = most negative eigenvalue of Xhat, [1] = trace-constraint residual
  // (||Tr_first(Xhat) - I|| on the TP path, max eigenvalue excess over 1 on
  // the non-TP path).
  RealVector constraint_residuals;
  bool degenerate = false;
};

/// Steps 4-5 for trace-preserving channels: PSD projection followed by the
/// trace-map normalization Xhat = (I (x) E^-1/2) D (I (x) E^-1/2)^dagger.
/// Throws DegenerateEstimateError when the trace map of the projection is
/// not positive definite (caller should use the non-TP path or increase N).
/// Cost: O(dA^6), dominated by the dA^2 x dA^2 eigendecomposition.
std::pair<ProcessMatrix, TssDiagnostics> tss_project_tp(const Matrix& ghat, Index dA);

/// Steps 4-5 for trace-decreasing channels: the trace map's zero modes are
/// lifted to e_c / n_copies and eigenvalues above one are capped, giving
/// Xhat = (I (x) T^1/2 B^-1/2) D (I (x) T^1/2 B^-1/2)^dagger with
/// Tr_first(Xhat) <= I. Returns the zero process matrix (flagged degenerate)
/// when the trace map vanishes entirely.
std::pair<ProcessMatrix, TssDiagnostics> tss_project_nontp(const Matrix& ghat, Index dA,
                                                           std::int64_t n_copies);

enum class ReconstructionMode { TP, NonTP };

struct ReconstructionResult {
  ProcessMatrix xhat;
  TssDiagnostics diagnostics;
  LinearInversionRecord inversion;
  ReconstructionMode mode;
};

/// Full pipeline: LRE state tomography, channel-table construction, linear
/// inversion, and the two-stage projection. Deterministic given the record.
/// Cost: O(M dA^2 dB^2) plus the per-step terms above; the state tomography
/// dominates for informationally complete suites.
ReconstructionResult aapt_reconstruct(const MeasurementRecord& record,
                                      const SchmidtDecomposition& schmidt,
                                      const MeasurementSuite& suite, ReconstructionMode mode);

/// Same pipeline fed with exact outcome probabilities instead of sampled
/// frequencies; recovers the true process matrix to numerical precision.
ReconstructionResult aapt_reconstruct_from_probabilities(const std::vector<RealVector>& probabilities,
                                                         const SchmidtDecomposition& schmidt,
                                                         const MeasurementSuite& suite,
                                                         ReconstructionMode mode);

}  // namespace aapt
