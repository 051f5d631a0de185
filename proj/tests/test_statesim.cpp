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

#include <doctest.h>

#include <cmath>

#include "aapt/errors.hpp"
#include "aapt/rng.hpp"
#include "test_helpers.hpp"

using namespace aapt;

TEST_CASE("maximally_entangled_state") {
  const DensityMatrix bell = maximally_entangled_state(2);
  Vector phi = Vector::Zero(4);
  phi[0] = phi[3] = 1.0 / std::sqrt(2.0);
  CHECK((bell.mat - phi * phi.adjoint()).norm() < 1e-15);
  CHECK((bell.mat * bell.mat).trace().real() == doctest::Approx(1.0));  // pure

  const SchmidtDecomposition schmidt = operator_schmidt(bell, 2, 2);
  double inverse_square_sum = 0.0;
  for (Index j = 0; j < 4; ++j) {
    CHECK(schmidt.coefficients[j] == doctest::Approx(0.5));
    inverse_square_sum += 1.0 / (schmidt.coefficients[j] * schmidt.coefficients[j]);
  }
  CHECK(inverse_square_sum == doctest::Approx(16.0));  // = dA^4, the minimum

  CHECK_THROWS_AS(maximally_entangled_state(1), DomainError);
}

TEST_CASE("random_full_schmidt_state") {
  const DensityMatrix a = random_full_schmidt_state(2, 2, 99);
  const DensityMatrix b = random_full_schmidt_state(2, 2, 99);
  CHECK((a.mat - b.mat).norm() == 0.0);
  CHECK(schmidt_number(a, 2, 2, 1e-6) == 4);

  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const DensityMatrix state = random_full_schmidt_state(2, 2, seed);
    const SchmidtDecomposition schmidt = operator_schmidt(state, 2, 2);
    CHECK(schmidt.coefficients[3] > 1e-6);
    // Input-design inequalities for every generated state.
    const double square_sum = schmidt.coefficients.squaredNorm();
    CHECK(square_sum <= 1.0 + 1e-10);
    CHECK(std::abs(square_sum - (state.mat * state.mat).trace().real()) < 1e-12);
    double inverse_square_sum = 0.0;
    for (Index j = 0; j < 4; ++j) {
      inverse_square_sum += 1.0 / (schmidt.coefficients[j] * schmidt.coefficients[j]);
    }
    CHECK(inverse_square_sum >= 16.0 - 1e-6);
    CHECK(schmidt.coefficients[3] <= 0.5 + 1e-10);  // min s_j <= 1/dA
  }

  CHECK_THROWS_AS(random_full_schmidt_state(2, 1, 0), DomainError);
}

TEST_CASE("operator_schmidt") {
  Philox rng(41, 0);

  SUBCASE("product states have one Schmidt term") {
    const Matrix rho_a = test::random_density(2, rng);
    const Matrix rho_b = test::random_density(2, rng);
    const DensityMatrix product(4, kron(rho_a, rho_b));
    const SchmidtDecomposition schmidt = operator_schmidt(product, 2, 2);
    CHECK(schmidt.coefficients[0] == doctest::Approx(rho_a.norm() * rho_b.norm()));
    for (Index j = 1; j < 4; ++j) {
      CHECK(schmidt.coefficients[j] < 1e-12);
    }
  }

  SUBCASE("bases are orthonormal and rebuild the state") {
    for (int i = 0; i < 100; ++i) {
      const DensityMatrix state(4, test::random_density(4, rng));
      const SchmidtDecomposition schmidt = operator_schmidt(state, 2, 2);
      for (Index j = 0; j < 4; ++j) {
        for (Index k = 0; k < 4; ++k) {
          const Complex a_inner = (schmidt.a_ops[static_cast<std::size_t>(j)].adjoint() *
                                   schmidt.a_ops[static_cast<std::size_t>(k)])
                                      .trace();
          const Complex b_inner = (schmidt.b_ops[static_cast<std::size_t>(j)].adjoint() *
                                   schmidt.b_ops[static_cast<std::size_t>(k)])
                                      .trace();
          const double expected = j == k ? 1.0 : 0.0;
          CHECK(std::abs(a_inner - expected) < 1e-10);
          CHECK(std::abs(b_inner - expected) < 1e-10);
        }
      }
      Matrix rebuilt = Matrix::Zero(4, 4);
      for (Index j = 0; j < 4; ++j) {
        rebuilt += schmidt.coefficients[j] * kron(schmidt.a_ops[static_cast<std::size_t>(j)],
                                                  schmidt.b_ops[static_cast<std::size_t>(j)]);
      }
      CHECK((rebuilt - state.mat).norm() < 1e-10);
      CHECK(schmidt.coefficients.squaredNorm() <= 1.0 + 1e-10);
    }
  }

  SUBCASE("phase convention pins the first nonzero entry of each A_j") {
    const DensityMatrix state(4, test::random_density(4, rng));
    const SchmidtDecomposition schmidt = operator_schmidt(state, 2, 2);
    for (const Matrix& a : schmidt.a_ops) {
      for (Index r = 0; r < 2; ++r) {
        bool done = false;
        for (Index c = 0; c < 2; ++c) {
          if (std::abs(a(r, c)) > 1e-12) {
            CHECK(a(r, c).real() > 0.0);
            CHECK(std::abs(a(r, c).imag()) < 1e-12);
            done = true;
            break;
          }
        }
        if (done) break;
      }
    }
  }

  CHECK_THROWS_AS(operator_schmidt(maximally_entangled_state(2), 2, 3), DimensionError);
}

TEST_CASE("schmidt_number") {
  Philox rng(42, 0);
  const DensityMatrix product(4, kron(test::random_density(2, rng), test::random_density(2, rng)));
  CHECK(schmidt_number(product, 2, 2, 1e-10) == 1);

  CHECK(schmidt_number(maximally_entangled_state(2), 2, 2, 1e-10) == 4);

  // Synthetic rank-two spectrum: (I(x)I + c sigma_z(x)sigma_z)/4 has Schmidt
  // coefficients (1/2, c/2, 0, 0).
  const Matrix zz = kron(test::pauli_z(), test::pauli_z());
  const DensityMatrix correlated(4, 0.25 * (Matrix::Identity(4, 4) + 0.6 * zz));
  CHECK(schmidt_number(correlated, 2, 2, 1e-10) == 2);
}

TEST_CASE("cube_measurements") {
  SUBCASE("single qubit") {
    const MeasurementSuite suite = cube_measurements(1);
    CHECK(suite.set_count() == 3);
    CHECK(suite.total_operators() == 6);
    const Matrix identity = Matrix::Identity(2, 2);
    const Matrix expected[3] = {test::pauli_x(), test::pauli_y(), test::pauli_z()};
    for (int axis = 0; axis < 3; ++axis) {
      const auto& set = suite.sets[static_cast<std::size_t>(axis)];
      REQUIRE(set.size() == 2);
      CHECK((set[0] - 0.5 * (identity + expected[axis])).norm() < 1e-15);
      CHECK((set[1] - 0.5 * (identity - expected[axis])).norm() < 1e-15);
    }
  }

  SUBCASE("two qubits") {
    const MeasurementSuite suite = cube_measurements(2);
    CHECK(suite.set_count() == 9);
    CHECK(suite.total_operators() == 36);
    for (const auto& set : suite.sets) {
      Matrix sum = Matrix::Zero(4, 4);
      for (const Matrix& op : set) {
        sum += op;
        CHECK(eigh(op).eigenvalues.minCoeff() > -1e-12);
      }
      CHECK((sum - Matrix::Identity(4, 4)).norm() < 1e-12);
    }
  }

  CHECK_THROWS_AS(cube_measurements(0), DomainError);
}

TEST_CASE("evolve_input") {
  const DensityMatrix bell = maximally_entangled_state(2);

  const KrausChannel identity(2, {Matrix::Identity(2, 2)});
  CHECK((evolve_input(identity, bell, 2, 2).mat - bell.mat).norm() < 1e-14);

  SUBCASE("phase damping scales the Bell coherence by 1/sqrt(3)") {
    const DensityMatrix out = evolve_input(phase_damping(2.0 / 3.0), bell, 2, 2);
    Matrix expected = Matrix::Zero(4, 4);
    expected(0, 0) = expected(3, 3) = 0.5;
    expected(0, 3) = expected(3, 0) = 0.5 / std::sqrt(3.0);
    CHECK((out.mat - expected).norm() < 1e-14);
  }

  SUBCASE("channel images factor through the Schmidt terms") {
    // Tr_B[(I (x) B_j^dagger) sigma_out] = s_j E(A_j), both sides computed
    // independently.
    const DensityMatrix input = random_full_schmidt_state(2, 2, 3);
    const SchmidtDecomposition schmidt = operator_schmidt(input, 2, 2);
    const KrausChannel channel = phase_damping(2.0 / 3.0);
    const DensityMatrix out = evolve_input(channel, input, 2, 2);
    for (std::size_t j = 0; j < 4; ++j) {
      const Matrix lhs = partial_trace_second(
          kron(Matrix::Identity(2, 2), schmidt.b_ops[j].adjoint()) * out.mat, 2, 2);
      const Matrix rhs = schmidt.coefficients[static_cast<Index>(j)] *
                         apply_channel_kraus(channel, schmidt.a_ops[j]);
      CHECK((lhs - rhs).norm() < 1e-10);
    }
  }

  CHECK_THROWS_AS(evolve_input(identity, bell, 2, 3), DimensionError);
}

TEST_CASE("born_probabilities") {
  const MeasurementSuite suite = cube_measurements(2);

  const DensityMatrix mixed(4, 0.25 * Matrix::Identity(4, 4));
  for (const RealVector& p : born_probabilities(mixed, suite)) {
    for (Index m = 0; m < p.size(); ++m) {
      CHECK(p[m] == doctest::Approx(0.25));
    }
  }

  // The sigma_z (x) sigma_z set is the last one; the Bell state gives
  // perfectly correlated outcomes.
  const DensityMatrix bell = maximally_entangled_state(2);
  const RealVector zz = born_probabilities(bell, suite).back();
  CHECK(zz[0] == doctest::Approx(0.5));
  CHECK(zz[1] == doctest::Approx(0.0));
  CHECK(zz[2] == doctest::Approx(0.0));
  CHECK(zz[3] == doctest::Approx(0.5));

  Philox rng(43, 0);
  for (int i = 0; i < 100; ++i) {
    const DensityMatrix state(4, test::random_density(4, rng));
    for (const RealVector& p : born_probabilities(state, suite)) {
      CHECK(p.sum() == doctest::Approx(1.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("sample_counts") {
  const MeasurementSuite suite = cube_measurements(2);
  const DensityMatrix bell = maximally_entangled_state(2);

  SUBCASE("allocation rule") {
    const MeasurementRecord record = sample_counts(bell, suite, 9'000'000, 1);
    CHECK(record.copies_per_set == 1'000'000);
    CHECK(record.discarded == 0);
    for (const auto& counts : record.counts) {
      std::int64_t sum = 0;
      for (const std::int64_t c : counts) sum += c;
      CHECK(sum == 1'000'000);
    }
    const MeasurementRecord ragged = sample_counts(bell, suite, 9'000'005, 1);
    CHECK(ragged.copies_per_set == 1'000'000);
    CHECK(ragged.discarded == 5);
  }

  SUBCASE("determinism") {
    const MeasurementRecord a = sample_counts(bell, suite, 90'000, 7);
    const MeasurementRecord b = sample_counts(bell, suite, 90'000, 7);
    CHECK(a.counts == b.counts);
    const MeasurementRecord c = sample_counts(bell, suite, 90'000, 8);
    CHECK(a.counts != c.counts);
  }

  SUBCASE("frequencies converge to the Born probabilities") {
    const DensityMatrix state = random_full_schmidt_state(2, 2, 11);
    const std::vector<RealVector> probs = born_probabilities(state, suite);
    const MeasurementRecord record = sample_counts(state, suite, 900'000, 3);
    const double copies = static_cast<double>(record.copies_per_set);
    for (std::size_t s = 0; s < probs.size(); ++s) {
      for (Index m = 0; m < probs[s].size(); ++m) {
        const double p = probs[s][m];
        const double freq =
            static_cast<double>(record.counts[s][static_cast<std::size_t>(m)]) / copies;
        const double sigma = std::sqrt(std::max(p * (1.0 - p), 1e-12) / copies);
        CHECK(std::abs(freq - p) < 5.0 * sigma);
      }
    }
  }

  SUBCASE("sampling is unbiased (pooled chi-square)") {
    // 100 independent trials on one cube set; the pooled statistic must not
    // reject uniform sampling at p = 0.001.
    const DensityMatrix mixed(4, 0.25 * Matrix::Identity(4, 4));
    const std::int64_t copies_per_set = 1000;
    double chi_square = 0.0;
    int dof = 0;
    for (int trial = 0; trial < 100; ++trial) {
      const MeasurementRecord record =
          sample_counts(mixed, suite, copies_per_set * 9, 1000 + static_cast<std::uint64_t>(trial));
      const auto& counts = record.counts[0];
      for (const std::int64_t c : counts) {
        const double expected = static_cast<double>(copies_per_set) / 4.0;
        chi_square += (static_cast<double>(c) - expected) * (static_cast<double>(c) - expected) /
                      expected;
      }
      dof += 3;
    }
    // Wilson-Hilferty critical value at p = 0.001.
    const double z = 3.0902;
    const double k = static_cast<double>(dof);
    const double critical =
        k * std::pow(1.0 - 2.0 / (9.0 * k) + z * std::sqrt(2.0 / (9.0 * k)), 3.0);
    CHECK(chi_square < critical);
  }

  SUBCASE("sub-normalized states lose counts to the no-click fraction") {
    Matrix contraction = Matrix::Zero(2, 2);
    contraction(0, 0) = 0.6;
    contraction(1, 1) = 0.6;
    const DensityMatrix out =
        evolve_input(KrausChannel(2, {contraction}), maximally_entangled_state(2), 2, 2);
    const double trace = out.mat.trace().real();  // 0.36
    const MeasurementRecord record = sample_counts(out, suite, 90'000, 5);
    for (const auto& counts : record.counts) {
      std::int64_t sum = 0;
      for (const std::int64_t c : counts) sum += c;
      const double rate = static_cast<double>(sum) / static_cast<double>(record.copies_per_set);
      CHECK(rate == doctest::Approx(trace).epsilon(0.05));
    }
  }

  CHECK_THROWS_AS(sample_counts(bell, suite, 8, 1), DomainError);
}
