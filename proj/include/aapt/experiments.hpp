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
#include <string>
#include <vector>

#include "aapt/tomography.hpp"

namespace aapt {

struct ChannelSpec {
  enum class Kind { PhaseDamping, Random, File };
  Kind kind = Kind::PhaseDamping;
  double lambda = 2.0 / 3.0;     // PhaseDamping
  bool tp = true;                // Random
  Index rank = 2;                // Random
  std::uint64_t seed = 1;        // Random
  std::string path;              // File: JSON channel, Kraus or process form
};

struct InputStateSpec {
  enum class Kind { MaximallyEntangled, RandomFullSchmidt };
  Kind kind = Kind::MaximallyEntangled;
  std::uint64_t seed = 1;        // RandomFullSchmidt
};

/// Everything a trial needs. copy_counts entries are total copies N; the
/// value 0 is the exact-probability sentinel (no sampling noise).
struct ExperimentConfig {
  ChannelSpec channel;
  Index dA = 2;
  Index dB = 2;
  InputStateSpec input;
  int cube_qubits = 2;
  std::vector<std::int64_t> copy_counts = {9'000, 90'000, 900'000};
  int repetitions = 10;
  std::uint64_t base_seed = 0;
  ReconstructionMode mode = ReconstructionMode::TP;
};

/// Checks the config invariants (dB >= dA, suite dimension matches dA*dB,
/// every N covers the set count, repetitions >= 1). Throws ConfigError.
void validate_config(const ExperimentConfig& cfg);

/// Instantiates the configured channel; file-backed channels are loaded and
/// validated here.
KrausChannel build_channel(const ChannelSpec& spec);

/// Instantiates the configured input state on dimension dA*dB.
DensityMatrix build_input_state(const InputStateSpec& spec, Index dA, Index dB);

/// Everything shared between the trials of one experiment: the channel and
/// its true process matrix, the input state with its Schmidt decomposition,
/// the measurement suite, and the exact output-state Born distributions.
struct ExperimentContext {
  KrausChannel channel;
  ProcessMatrix truth;
  DensityMatrix input;
  SchmidtDecomposition schmidt;
  MeasurementSuite suite;
  DensityMatrix output;
  std::vector<RealVector> probabilities;
};

ExperimentContext build_context(const ExperimentConfig& cfg);

/// One reconstruction with the sampling substream derived from
/// (base_seed, trial_index). n_copies == 0 runs on exact probabilities.
ReconstructionResult reconstruct_trial(const ExperimentContext& ctx, const ExperimentConfig& cfg,
                                       std::int64_t n_copies, int trial_index);

struct TrialResult {
  ProcessMatrix xhat;
  double mse = 0.0;  // squared Frobenius error against the true process matrix
};

/// One simulated experiment scored against the true process matrix.
TrialResult run_trial(const ExperimentConfig& cfg, std::int64_t n_copies, int trial_index);

struct SweepRow {
  std::int64_t n_copies = 0;
  double mean_mse = 0.0;
  double std_err = 0.0;
  std::vector<double> per_trial;
  double bound = 0.0;  // analytic error-bound value with unit constant, 0 for exact rows
};

struct SweepResult {
  std::vector<SweepRow> rows;
};

/// repetitions trials per copy count; deterministic in base_seed regardless
/// of the worker count.
SweepResult mse_sweep(const ExperimentConfig& cfg, int jobs = 1);

/// Error-bound expression with unit constant:
/// dA * sqrt(dB) * Tr(E) * sqrt(L * Tr((C^T C)^-1)) * sqrt(sum_j 1/s_j^2) / sqrt(N).
/// Used for scaling and ratio checks only, never as an absolute threshold.
double theoretical_bound(const Matrix& trace_map, Index set_count, const RealMatrix& c,
                         const RealVector& schmidt_coefficients, std::int64_t n_copies,
                         Index dA, Index dB);

struct InputComparison {
  SweepResult optimal;   // maximally entangled input
  SweepResult random;    // random full-Schmidt input from cfg.input.seed
};

/// Runs the sweep twice with the input state swapped and all sampling
/// substreams shared per (N, trial), so the comparison is paired.
InputComparison compare_input_states(const ExperimentConfig& cfg, int jobs = 1);

struct LogLogFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

/// Ordinary least squares on (log N, log mean MSE). Needs at least three
/// rows with positive mean MSE.
LogLogFit fit_loglog_slope(const SweepResult& result);

}  // namespace aapt
