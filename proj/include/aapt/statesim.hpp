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
#include <vector>

#include "aapt/channel.hpp"
#include "aapt/qlinalg.hpp"

namespace aapt {

/// Hermitian PSD operator with trace in (0, 1]. Channel outputs of
/// trace-decreasing maps are sub-normalized; is_normalized() distinguishes
/// proper states.
struct DensityMatrix {
  DensityMatrix(Index dim, Matrix mat);

  bool is_normalized(double tol = kValidationTol) const;

  Index dim;
  Matrix mat;
};

/// Operator-Schmidt decomposition of a bipartite state:
/// sigma = sum_j s_j A_j (x) B_j with {A_j}, {B_j} orthonormal under the
/// Hilbert-Schmidt inner product and s_j >= 0 descending.
struct SchmidtDecomposition {
  Index dA = 0;
  Index dB = 0;
  RealVector coefficients;      // length dA^2, descending
  std::vector<Matrix> a_ops;    // dA x dA
  std::vector<Matrix> b_ops;    // dB x dB
};

/// POVM collection grouped into basis sets; each set sums to the identity.
struct MeasurementSuite {
  Index dim = 0;
  std::vector<std::vector<Matrix>> sets;

  Index set_count() const { return static_cast<Index>(sets.size()); }
  Index total_operators() const;
};

/// Sampled outcome counts. Copies are split equally over the sets; the
/// remainder is discarded and reported. For sub-normalized states the
/// no-click fraction is not recorded, so a set's counts may sum to less than
/// copies_per_set.
struct MeasurementRecord {
  std::uint64_t seed = 0;
  std::int64_t total_copies = 0;
  std::int64_t copies_per_set = 0;
  std::int64_t discarded = 0;
  std::vector<std::vector<std::int64_t>> counts;

  /// Per-set outcome frequencies count / copies_per_set.
  std::vector<RealVector> frequencies() const;
};

/// |Phi><Phi| with |Phi> = (1/sqrt(d)) sum_i |i>|i> on a d*d space. All of
/// its operator-Schmidt coefficients equal 1/d, the optimum for process
/// reconstruction.
DensityMatrix maximally_entangled_state(Index d);

/// Ginibre-random density matrix on dA*dB, resampled (up to 100 attempts)
/// until all dA^2 operator-Schmidt coefficients exceed tol. Deterministic in
/// the seed. Requires dB >= dA.
DensityMatrix random_full_schmidt_state(Index dA, Index dB, std::uint64_t seed,
                                        double tol = 1e-6);

/// Operator-Schmidt decomposition via the SVD of realign(sigma). Each A_j is
/// phase-fixed so its first nonzero entry (row-major scan) is real positive,
/// with the compensating phase absorbed into B_j.
SchmidtDecomposition operator_schmidt(const DensityMatrix& sigma, Index dA, Index dB);

/// Number of operator-Schmidt coefficients exceeding tol.
Index schmidt_number(const DensityMatrix& sigma, Index dA, Index dB, double tol);

/// Pauli cube measurements for n qubits: 3^n basis sets of 2^n projectors
/// each, built as tensor products of {(I +- sigma_x)/2, (I +- sigma_y)/2,
/// (I +- sigma_z)/2}.
MeasurementSuite cube_measurements(int n_qubits);

/// Output state (E (x) I)(sigma_in): the channel acts on the first factor,
/// the ancilla is untouched. Sub-normalized when the channel is not
/// trace-preserving.
DensityMatrix evolve_input(const KrausChannel& channel, const DensityMatrix& sigma_in,
                           Index dA, Index dB);

/// Exact outcome distributions p_m = Tr(P_m sigma), clipped to [0, 1].
std::vector<RealVector> born_probabilities(const DensityMatrix& sigma,
                                           const MeasurementSuite& suite);

/// Draws floor(N / L) copies per basis set from the Born distributions.
/// Deterministic in the seed; each set samples from its own substream.
MeasurementRecord sample_counts(const DensityMatrix& sigma, const MeasurementSuite& suite,
                                std::int64_t n_copies, std::uint64_t seed);

}  // namespace aapt
