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

#include "aapt/statesim.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "aapt/errors.hpp"
#include "aapt/rng.hpp"

namespace aapt {

namespace {

Matrix pauli_x() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  return m;
}

Matrix pauli_y() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = Complex(0.0, -1.0);
  m(1, 0) = Complex(0.0, 1.0);
  return m;
}

Matrix pauli_z() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  return m;
}

Matrix ginibre_matrix(Index rows, Index cols, Philox& rng) {
  Matrix g(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) {
      g(i, j) = Complex(rng.normal(), rng.normal()) / std::sqrt(2.0);
    }
  }
  return g;
}

RealVector schmidt_coefficients_of(const Matrix& mat, Index dA, Index dB) {
  const Matrix rearranged = realign(mat, dA, dB);
  Eigen::JacobiSVD<Matrix> svd(rearranged);
  return svd.singularValues();
}

}  // namespace

DensityMatrix::DensityMatrix(Index dim_in, Matrix mat_in) : dim(dim_in), mat(std::move(mat_in)) {
  if (dim < 1) {
    throw DomainError("DensityMatrix: dimension must be positive");
  }
  if (mat.rows() != dim || mat.cols() != dim) {
    throw DimensionError("DensityMatrix: matrix dimension mismatch");
  }
  if (!mat.allFinite()) {
    throw ValidationError("DensityMatrix: entries must be finite");
  }
  if ((mat - mat.adjoint()).norm() > kValidationTol) {
    throw ValidationError("DensityMatrix: matrix is not Hermitian within tolerance");
  }
  const double trace = mat.trace().real();
  if (trace <= 0.0 || trace > 1.0 + kValidationTol) {
    throw ValidationError("DensityMatrix: trace must lie in (0, 1]");
  }
  const HermitianEigenDecomposition eig = eigh(mat);
  if (eig.eigenvalues[eig.eigenvalues.size() - 1] < -1e-10) {
    throw ValidationError("DensityMatrix: matrix has a negative eigenvalue beyond tolerance");
  }
}

bool DensityMatrix::is_normalized(double tol) const {
  return std::abs(mat.trace().real() - 1.0) <= tol;
}

Index MeasurementSuite::total_operators() const {
  Index total = 0;
  for (const auto& set : sets) {
    total += static_cast<Index>(set.size());
  }
  return total;
}

std::vector<RealVector> MeasurementRecord::frequencies() const {
  std::vector<RealVector> out;
  out.reserve(counts.size());
  for (const auto& set : counts) {
    RealVector f(static_cast<Index>(set.size()));
    for (std::size_t m = 0; m < set.size(); ++m) {
      f[static_cast<Index>(m)] =
          static_cast<double>(set[m]) / static_cast<double>(copies_per_set);
    }
    out.push_back(std::move(f));
  }
  return out;
}

DensityMatrix maximally_entangled_state(Index d) {
  if (d < 2) {
    throw DomainError("maximally_entangled_state: d must be at least 2");
  }
  Vector phi = Vector::Zero(d * d);
  for (Index i = 0; i < d; ++i) {
    phi[i * d + i] = 1.0 / std::sqrt(static_cast<double>(d));
  }
  return DensityMatrix(d * d, phi * phi.adjoint());
}

DensityMatrix random_full_schmidt_state(Index dA, Index dB, std::uint64_t seed, double tol) {
  if (dA < 2) {
    throw DomainError("random_full_schmidt_state: dA must be at least 2");
  }
  if (dB < dA) {
    throw DomainError("random_full_schmidt_state: ancilla dimension must satisfy dB >= dA");
  }
  const Index d = dA * dB;
  for (int attempt = 0; attempt < 100; ++attempt) {
    Philox rng(seed, derive_stream(0x7374617465ULL, static_cast<std::uint64_t>(attempt)));
    const Matrix g = ginibre_matrix(d, d, rng);
    Matrix rho = g * g.adjoint();
    rho = hermitian_part(rho / rho.trace().real());
    const RealVector s = schmidt_coefficients_of(rho, dA, dB);
    if (s.size() >= dA * dA && s[dA * dA - 1] > tol) {
      return DensityMatrix(d, std::move(rho));
    }
  }
  throw GenerationError("random_full_schmidt_state: no full-Schmidt state in 100 attempts");
}

SchmidtDecomposition operator_schmidt(const DensityMatrix& sigma, Index dA, Index dB) {
  if (sigma.dim != dA * dB) {
    throw DimensionError("operator_schmidt: state dimension does not factor as dA*dB");
  }
  const Matrix rearranged = realign(sigma.mat, dA, dB);
  Eigen::JacobiSVD<Matrix> svd(rearranged, Eigen::ComputeThinU | Eigen::ComputeThinV);

  SchmidtDecomposition out;
  out.dA = dA;
  out.dB = dB;
  out.coefficients = svd.singularValues();
  const Index terms = out.coefficients.size();  // = dA^2 since dB >= dA
  out.a_ops.reserve(static_cast<std::size_t>(terms));
  out.b_ops.reserve(static_cast<std::size_t>(terms));
  for (Index j = 0; j < terms; ++j) {
    Matrix a = unvec(svd.matrixU().col(j));
    Matrix b = unvec(svd.matrixV().col(j).conjugate());
    // Phase-fix A_j on its first nonzero entry in row-major scan; absorb the
    // compensating phase into B_j so the product is unchanged.
    for (Index r = 0; r < a.rows(); ++r) {
      bool fixed = false;
      for (Index c = 0; c < a.cols(); ++c) {
        if (std::abs(a(r, c)) > 1e-12) {
          const Complex phase = a(r, c) / std::abs(a(r, c));
          a *= std::conj(phase);
          b *= phase;
          fixed = true;
          break;
        }
      }
      if (fixed) break;
    }
    out.a_ops.push_back(std::move(a));
    out.b_ops.push_back(std::move(b));
  }
  return out;
}

Index schmidt_number(const DensityMatrix& sigma, Index dA, Index dB, double tol) {
  if (sigma.dim != dA * dB) {
    throw DimensionError("schmidt_number: state dimension does not factor as dA*dB");
  }
  const RealVector s = schmidt_coefficients_of(sigma.mat, dA, dB);
  Index count = 0;
  for (Index j = 0; j < s.size(); ++j) {
    if (s[j] > tol) ++count;
  }
  return count;
}

MeasurementSuite cube_measurements(int n_qubits) {
  if (n_qubits < 1) {
    throw DomainError("cube_measurements: need at least one qubit");
  }
  const Matrix identity = Matrix::Identity(2, 2);
  const Matrix paulis[3] = {pauli_x(), pauli_y(), pauli_z()};
  std::vector<std::vector<Matrix>> qubit_sets;
  for (const Matrix& pauli : paulis) {
    qubit_sets.push_back({0.5 * (identity + pauli), 0.5 * (identity - pauli)});
  }

  std::vector<std::vector<Matrix>> sets = {{Matrix::Identity(1, 1)}};
  for (int q = 0; q < n_qubits; ++q) {
    std::vector<std::vector<Matrix>> next;
    for (const auto& partial : sets) {
      for (const auto& axis : qubit_sets) {
        std::vector<Matrix> combined;
        combined.reserve(partial.size() * axis.size());
        for (const Matrix& p : partial) {
          for (const Matrix& a : axis) {
            combined.push_back(kron(p, a));
          }
        }
        next.push_back(std::move(combined));
      }
    }
    sets = std::move(next);
  }

  MeasurementSuite suite;
  suite.dim = Index{1} << n_qubits;
  suite.sets = std::move(sets);
  return suite;
}

DensityMatrix evolve_input(const KrausChannel& channel, const DensityMatrix& sigma_in,
                           Index dA, Index dB) {
  if (channel.dim != dA) {
    throw DimensionError("evolve_input: channel dimension mismatch");
  }
  if (sigma_in.dim != dA * dB) {
    throw DimensionError("evolve_input: state dimension does not factor as dA*dB");
  }
  const Matrix identity = Matrix::Identity(dB, dB);
  Matrix out = Matrix::Zero(sigma_in.dim, sigma_in.dim);
  for (const Matrix& op : channel.operators) {
    const Matrix extended = kron(op, identity);
    out += extended * sigma_in.mat * extended.adjoint();
  }
  return DensityMatrix(sigma_in.dim, hermitian_part(out));
}

std::vector<RealVector> born_probabilities(const DensityMatrix& sigma,
                                           const MeasurementSuite& suite) {
  if (sigma.dim != suite.dim) {
    throw DimensionError("born_probabilities: state and suite dimensions differ");
  }
  std::vector<RealVector> out;
  out.reserve(suite.sets.size());
  for (const auto& set : suite.sets) {
    RealVector p(static_cast<Index>(set.size()));
    for (std::size_t m = 0; m < set.size(); ++m) {
      const double value = (set[m] * sigma.mat).trace().real();
      p[static_cast<Index>(m)] = std::clamp(value, 0.0, 1.0);
    }
    out.push_back(std::move(p));
  }
  return out;
}

MeasurementRecord sample_counts(const DensityMatrix& sigma, const MeasurementSuite& suite,
                                std::int64_t n_copies, std::uint64_t seed) {
  const auto set_count = static_cast<std::int64_t>(suite.sets.size());
  if (n_copies < set_count) {
    throw DomainError("sample_counts: need at least one copy per basis set");
  }
  const std::vector<RealVector> probs = born_probabilities(sigma, suite);

  MeasurementRecord record;
  record.seed = seed;
  record.total_copies = n_copies;
  record.copies_per_set = n_copies / set_count;
  record.discarded = n_copies - record.copies_per_set * set_count;
  record.counts.reserve(probs.size());

  for (std::size_t set = 0; set < probs.size(); ++set) {
    const RealVector& p = probs[set];
    const auto outcomes = static_cast<std::size_t>(p.size());
    std::vector<double> cumulative(outcomes);
    double total = 0.0;
    for (std::size_t m = 0; m < outcomes; ++m) {
      total += p[static_cast<Index>(m)];
      cumulative[m] = total;
    }
    // Sub-normalized states leave a no-click gap; for numerically normalized
    // distributions fold the rounding tail into the last outcome so counts
    // sum exactly to copies_per_set.
    const bool normalized = total >= 1.0 - 1e-9;

    Philox rng(seed, derive_stream(0x73616D70ULL, static_cast<std::uint64_t>(set)));
    std::vector<std::int64_t> counts(outcomes, 0);
    for (std::int64_t copy = 0; copy < record.copies_per_set; ++copy) {
      const double u = rng.uniform();
      std::size_t chosen = outcomes;  // sentinel: no click
      for (std::size_t m = 0; m < outcomes; ++m) {
        if (u < cumulative[m]) {
          chosen = m;
          break;
        }
      }
      if (chosen == outcomes) {
        if (!normalized) continue;
        chosen = outcomes - 1;
      }
      ++counts[chosen];
    }
    record.counts.push_back(std::move(counts));
  }
  return record;
}

}  // namespace aapt
