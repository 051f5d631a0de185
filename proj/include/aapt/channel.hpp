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

#include "aapt/qlinalg.hpp"

namespace aapt {

/// Completely positive map in Kraus form: E(rho) = sum_k A_k rho A_k^dagger.
/// Construction validates that sum_k A_k^dagger A_k <= I (trace-preserving
/// channels meet it with equality).
struct KrausChannel {
  KrausChannel(Index dim, std::vector<Matrix> operators);

  Index dim;
  std::vector<Matrix> operators;
};

/// Process matrix representation of a channel: the dA^2 x dA^2 Hermitian PSD
/// matrix X = sum_{ij} E(|i><j|) (x) |i><j|, output factor first. Under this
/// ordering the trace-preservation constraint reads Tr_first(X) = I.
struct ProcessMatrix {
  ProcessMatrix(Index dimA, Matrix x);

  Index dimA;
  Matrix X;
  Matrix traceMap;  // Tr_first(X), cached at construction
};

enum class TraceClass { TP, NonTP, Invalid };

/// Phase damping channel with scattering probability lambda in [0, 1]:
/// Kraus operators diag(1, sqrt(1-lambda)) and diag(0, sqrt(lambda)).
KrausChannel phase_damping(double lambda);

/// Builds the process matrix X = sum_{ij} E(|i><j|) (x) |i><j|.
ProcessMatrix kraus_to_process(const KrausChannel& channel);

/// Kraus representation recovered from the spectral decomposition of X.
KrausChannel process_to_kraus(const ProcessMatrix& process);

/// Ground-truth channel action: sum_k A_k rho A_k^dagger.
Matrix apply_channel_kraus(const KrausChannel& channel, const Matrix& rho);

/// Channel action through the process matrix; agrees with any Kraus
/// representation of the same channel.
Matrix apply_process_matrix(const ProcessMatrix& process, const Matrix& rho);

/// TP if Tr_first(X) = I within tol, NonTP if Tr_first(X) <= I + tol without
/// being TP, Invalid otherwise.
TraceClass is_trace_preserving(const ProcessMatrix& process, double tol = 1e-8);

/// Seeded random channel of the given Kraus rank. tp=true draws a random
/// Stinespring isometry (completeness holds to machine precision); tp=false
/// additionally scales the channel by a random factor in (0, 1), so the
/// trace map stays strictly below the identity.
KrausChannel random_channel(Index d, Index rank, bool tp, std::uint64_t seed);

/// Frobenius distance between two process matrices of matching dimension.
double process_distance(const ProcessMatrix& a, const ProcessMatrix& b);

}  // namespace aapt
