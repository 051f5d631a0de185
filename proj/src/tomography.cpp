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

#include "aapt/tomography.hpp"

#include <cmath>

#include "aapt/errors.hpp"

namespace aapt {

namespace {

// Exact-probability reconstructions still need a copy count for the non-TP
// zero-mode lift; any large value works because the projected estimate has no
// weight on those modes.
constexpr std::int64_t kExactCopySentinel = 1'000'000'000'000'000LL;

RealVector flatten(const std::vector<RealVector>& per_set) {
  Index total = 0;
  for (const auto& v : per_set) total += v.size();
  RealVector out(total);
  Index at = 0;
  for (const auto& v : per_set) {
    out.segment(at, v.size()) = v;
    at += v.size();
  }
  return out;
}

TssDiagnostics make_diagnostics(const PsdProjection& proj, const Matrix& ehat_matrix,
                                const HermitianEigenDecomposition& ehat_eig) {
  TssDiagnostics diag;
  diag.eigs_k = proj.eigenvalues;
  diag.clamped_z = proj.clamped;
  diag.ehat_matrix = ehat_matrix;
  diag.ehat = ehat_eig.eigenvalues;
  return diag;
}

void fill_residuals(TssDiagnostics& diag, const Matrix& xhat, Index dA, bool tp_path) {
  const HermitianEigenDecomposition xeig = eigh(xhat);
  const Matrix trace_map = partial_trace_first(xhat, dA, dA);
  double trace_residual = 0.0;
  if (tp_path) {
    trace_residual = (trace_map - Matrix::Identity(dA, dA)).norm();
  } else {
    const HermitianEigenDecomposition teig = eigh(hermitian_part(trace_map));
    trace_residual = std::max(0.0, teig.eigenvalues[0] - 1.0);
  }
  diag.constraint_residuals.resize(2);
  diag.constraint_residuals[0] = xeig.eigenvalues[xeig.eigenvalues.size() - 1];
  diag.constraint_residuals[1] = trace_residual;
}

ReconstructionResult reconstruct_impl(const std::vector<RealVector>& frequencies,
                                      const SchmidtDecomposition& schmidt,
                                      const MeasurementSuite& suite, ReconstructionMode mode,
                                      std::int64_t n_copies) {
  const Matrix sigma_hat = lre_state_tomography(frequencies, suite);
  const ChannelTable table = reconstruct_Y(sigma_hat, schmidt);
  const Matrix v = parameterization_V(schmidt);
  const Matrix r = build_permutation_R(schmidt.dA);
  const Matrix ghat = linear_inversion_G(table.yhat, v, r);

  auto [xhat, diag] = mode == ReconstructionMode::TP
                          ? tss_project_tp(ghat, schmidt.dA)
                          : tss_project_nontp(ghat, schmidt.dA, n_copies);
  return ReconstructionResult{std::move(xhat), std::move(diag),
                              LinearInversionRecord{v, table.yhat, r, ghat}, mode};
}

}  // namespace

std::vector<Matrix> hermitian_operator_basis(Index d) {
  if (d < 1) {
    throw DomainError("hermitian_operator_basis: dimension must be positive");
  }
  std::vector<Matrix> basis;
  basis.reserve(static_cast<std::size_t>(d * d));
  basis.push_back(Matrix::Identity(d, d) / std::sqrt(static_cast<double>(d)));
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (Index j = 0; j < d; ++j) {
    for (Index k = j + 1; k < d; ++k) {
      Matrix sym = Matrix::Zero(d, d);
      sym(j, k) = inv_sqrt2;
      sym(k, j) = inv_sqrt2;
      basis.push_back(std::move(sym));
    }
  }
  for (Index j = 0; j < d; ++j) {
    for (Index k = j + 1; k < d; ++k) {
      Matrix asym = Matrix::Zero(d, d);
      asym(j, k) = Complex(0.0, -inv_sqrt2);
      asym(k, j) = Complex(0.0, inv_sqrt2);
      basis.push_back(std::move(asym));
    }
  }
  for (Index l = 1; l < d; ++l) {
    Matrix diag = Matrix::Zero(d, d);
    const double norm = 1.0 / std::sqrt(static_cast<double>(l * (l + 1)));
    for (Index j = 0; j < l; ++j) {
      diag(j, j) = norm;
    }
    diag(l, l) = -static_cast<double>(l) * norm;
    basis.push_back(std::move(diag));
  }
  return basis;
}

RealMatrix measurement_parameterization_C(const MeasurementSuite& suite) {
  const Index d = suite.dim;
  const std::vector<Matrix> basis = hermitian_operator_basis(d);
  RealMatrix c(suite.total_operators(), d * d);
  Index row = 0;
  for (const auto& set : suite.sets) {
    for (const Matrix& op : set) {
      for (std::size_t b = 0; b < basis.size(); ++b) {
        c(row, static_cast<Index>(b)) = (basis[b] * op).trace().real();
      }
      ++row;
    }
  }
  return c;
}

Matrix lre_state_tomography(const std::vector<RealVector>& frequencies,
                            const MeasurementSuite& suite) {
  if (frequencies.size() != suite.sets.size()) {
    throw DimensionError("lre_state_tomography: frequency/set count mismatch");
  }
  for (std::size_t s = 0; s < frequencies.size(); ++s) {
    if (frequencies[s].size() != static_cast<Index>(suite.sets[s].size())) {
      throw DimensionError("lre_state_tomography: frequency vector length mismatch");
    }
  }
  const Index d = suite.dim;
  const Index n_params = d * d;
  const RealMatrix c = measurement_parameterization_C(suite);

  Eigen::ColPivHouseholderQR<RealMatrix> rank_check(c);
  if (rank_check.rank() < n_params) {
    throw CompletenessError("lre_state_tomography: measurement suite is not informationally complete");
  }

  // Pin the trace coordinate to the empirical trace: the per-set frequency
  // sums all estimate Tr(sigma), and equal 1 exactly for normalized data.
  double empirical_trace = 0.0;
  for (const auto& f : frequencies) {
    empirical_trace += f.sum();
  }
  empirical_trace /= static_cast<double>(frequencies.size());
  const double theta0 = empirical_trace / std::sqrt(static_cast<double>(d));

  const RealVector p = flatten(frequencies);
  const RealMatrix c_rest = c.rightCols(n_params - 1);
  const RealVector rhs = p - theta0 * c.col(0);
  const RealMatrix normal = c_rest.transpose() * c_rest;
  const RealVector theta_rest =
      Eigen::ColPivHouseholderQR<RealMatrix>(normal).solve(c_rest.transpose() * rhs);

  const std::vector<Matrix> basis = hermitian_operator_basis(d);
  Matrix sigma = theta0 * basis[0];
  for (Index k = 1; k < n_params; ++k) {
    sigma += theta_rest[k - 1] * basis[static_cast<std::size_t>(k)];
  }
  return hermitian_part(sigma);
}

Matrix lre_state_tomography(const MeasurementRecord& record, const MeasurementSuite& suite) {
  return lre_state_tomography(record.frequencies(), suite);
}

ChannelTable reconstruct_Y(const Matrix& sigma_out_hat, const SchmidtDecomposition& schmidt,
                           double tol) {
  const Index dA = schmidt.dA;
  const Index dB = schmidt.dB;
  if (sigma_out_hat.rows() != dA * dB || sigma_out_hat.cols() != dA * dB) {
    throw DimensionError("reconstruct_Y: output-state dimension mismatch");
  }
  const Index terms = dA * dA;
  const Matrix identity = Matrix::Identity(dA, dA);

  ChannelTable table;
  table.yhat.resize(terms, terms);
  table.on_basis.reserve(static_cast<std::size_t>(terms));
  for (Index j = 0; j < terms; ++j) {
    const double s = schmidt.coefficients[j];
    if (s <= tol) {
      throw ValidationError("reconstruct_Y: input state is not full Schmidt rank");
    }
    const Matrix weighted =
        kron(identity, schmidt.b_ops[static_cast<std::size_t>(j)].adjoint()) * sigma_out_hat;
    Matrix image = partial_trace_second(weighted, dA, dB) / s;
    table.yhat.col(j) = vec(image);
    table.on_basis.push_back(std::move(image));
  }
  return table;
}

Matrix parameterization_V(const SchmidtDecomposition& schmidt) {
  const Index terms = schmidt.dA * schmidt.dA;
  Matrix v(terms, terms);
  for (Index j = 0; j < terms; ++j) {
    v.col(j) = vec(schmidt.a_ops[static_cast<std::size_t>(j)]);
  }
  return v;
}

Matrix linear_inversion_G(const Matrix& yhat, const Matrix& v, const Matrix& r) {
  const Index d2 = v.rows();
  if (v.cols() != d2 || yhat.rows() != d2 || yhat.cols() != d2) {
    throw DimensionError("linear_inversion_G: parameterization dimension mismatch");
  }
  if (r.rows() != d2 * d2 || r.cols() != d2 * d2) {
    throw DimensionError("linear_inversion_G: permutation dimension mismatch");
  }
  if ((v.adjoint() * v - Matrix::Identity(d2, d2)).norm() > kValidationTol) {
    throw ValidationError("linear_inversion_G: V is not unitary within tolerance");
  }
  // kron(V^*, I) vec(Y) = vec(Y V^dagger), so the permutation is the only
  // large operator ever materialized.
  return unvec(r.transpose() * vec((yhat * v.adjoint()).eval()));
}

std::pair<ProcessMatrix, TssDiagnostics> tss_project_tp(const Matrix& ghat, Index dA) {
  const PsdProjection proj = psd_projection(hermitian_part(ghat));
  const Matrix ehat_matrix = partial_trace_first(proj.matrix, dA, dA);
  const HermitianEigenDecomposition ehat_eig = eigh(hermitian_part(ehat_matrix));

  if (ehat_eig.eigenvalues[dA - 1] <= 1e-12) {
    throw DegenerateEstimateError(
        "tss_project_tp: trace map of the projected estimate is not positive definite; "
        "use the non-TP path or increase the copy count");
  }
  const Matrix inv_sqrt = ehat_eig.eigenvectors *
                          ehat_eig.eigenvalues.cwiseSqrt().cwiseInverse().asDiagonal() *
                          ehat_eig.eigenvectors.adjoint();
  const Matrix sandwich = kron(Matrix::Identity(dA, dA), inv_sqrt);
  const Matrix xhat = hermitian_part(sandwich * proj.matrix * sandwich.adjoint());

  TssDiagnostics diag = make_diagnostics(proj, ehat_matrix, ehat_eig);
  diag.positive_count = dA;
  fill_residuals(diag, xhat, dA, /*tp_path=*/true);
  return {ProcessMatrix(dA, xhat), std::move(diag)};
}

std::pair<ProcessMatrix, TssDiagnostics> tss_project_nontp(const Matrix& ghat, Index dA,
                                                           std::int64_t n_copies) {
  if (n_copies < 1) {
    throw DomainError("tss_project_nontp: copy count must be at least 1");
  }
  const PsdProjection proj = psd_projection(hermitian_part(ghat));
  const Matrix ehat_matrix = partial_trace_first(proj.matrix, dA, dA);
  const HermitianEigenDecomposition ehat_eig = eigh(hermitian_part(ehat_matrix));

  TssDiagnostics diag = make_diagnostics(proj, ehat_matrix, ehat_eig);

  // Relative zero threshold: exact zeros never survive floating point.
  const double top = ehat_eig.eigenvalues[0];
  Index c = 0;
  for (Index i = 0; i < dA; ++i) {
    if (ehat_eig.eigenvalues[i] > 1e-12 * std::max(top, 0.0)) ++c;
  }
  diag.positive_count = c;
  if (c == 0) {
    diag.degenerate = true;
    diag.bar_e = RealVector::Zero(dA);
    diag.tilde_e = RealVector::Zero(dA);
    const Matrix zero = Matrix::Zero(dA * dA, dA * dA);
    fill_residuals(diag, zero, dA, /*tp_path=*/false);
    return {ProcessMatrix(dA, zero), std::move(diag)};
  }

  diag.bar_e.resize(dA);
  diag.tilde_e.resize(dA);
  RealVector ratio(dA);
  const double lifted = ehat_eig.eigenvalues[c - 1] / static_cast<double>(n_copies);
  for (Index i = 0; i < dA; ++i) {
    diag.bar_e[i] = i < c ? ehat_eig.eigenvalues[i] : lifted;
    diag.tilde_e[i] = std::min(diag.bar_e[i], 1.0);
    ratio[i] = std::sqrt(diag.tilde_e[i] / diag.bar_e[i]);
  }
  const Matrix shape = ehat_eig.eigenvectors * ratio.asDiagonal() * ehat_eig.eigenvectors.adjoint();
  const Matrix sandwich = kron(Matrix::Identity(dA, dA), shape);
  const Matrix xhat = hermitian_part(sandwich * proj.matrix * sandwich.adjoint());

  fill_residuals(diag, xhat, dA, /*tp_path=*/false);
  return {ProcessMatrix(dA, xhat), std::move(diag)};
}

ReconstructionResult aapt_reconstruct(const MeasurementRecord& record,
                                      const SchmidtDecomposition& schmidt,
                                      const MeasurementSuite& suite, ReconstructionMode mode) {
  return reconstruct_impl(record.frequencies(), schmidt, suite, mode, record.total_copies);
}

ReconstructionResult aapt_reconstruct_from_probabilities(const std::vector<RealVector>& probabilities,
                                                         const SchmidtDecomposition& schmidt,
                                                         const MeasurementSuite& suite,
                                                         ReconstructionMode mode) {
  return reconstruct_impl(probabilities, schmidt, suite, mode, kExactCopySentinel);
}

}  // namespace aapt
