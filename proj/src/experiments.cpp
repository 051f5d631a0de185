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

#include "aapt/experiments.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>

#include "aapt/errors.hpp"
#include "aapt/rng.hpp"
#include "aapt/serialization.hpp"

namespace aapt {

namespace {

std::int64_t pow_int(std::int64_t base, int exponent) {
  std::int64_t out = 1;
  for (int i = 0; i < exponent; ++i) out *= base;
  return out;
}

TrialResult run_trial_in_context(const ExperimentContext& ctx, const ExperimentConfig& cfg,
                                 std::int64_t n_copies, int trial_index) {
  try {
    ReconstructionResult result = reconstruct_trial(ctx, cfg, n_copies, trial_index);
    const double distance = process_distance(result.xhat, ctx.truth);
    return TrialResult{std::move(result.xhat), distance * distance};
  } catch (const DegenerateEstimateError& e) {
    throw DegenerateEstimateError("trial " + std::to_string(trial_index) + ": " + e.what());
  } catch (const Error& e) {
    throw Error("trial " + std::to_string(trial_index) + ": " + e.what());
  }
}

std::vector<double> run_trials(const ExperimentContext& ctx, const ExperimentConfig& cfg,
                               std::int64_t n_copies, int jobs) {
  const int trials = cfg.repetitions;
  std::vector<double> mse(static_cast<std::size_t>(trials), 0.0);
  const int workers = std::max(1, std::min(jobs, trials));
  if (workers == 1) {
    for (int t = 0; t < trials; ++t) {
      mse[static_cast<std::size_t>(t)] = run_trial_in_context(ctx, cfg, n_copies, t).mse;
    }
    return mse;
  }

  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&]() {
    for (int t = next.fetch_add(1); t < trials; t = next.fetch_add(1)) {
      try {
        mse[static_cast<std::size_t>(t)] = run_trial_in_context(ctx, cfg, n_copies, t).mse;
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& thread : pool) thread.join();
  if (failure) std::rethrow_exception(failure);
  return mse;
}

}  // namespace

void validate_config(const ExperimentConfig& cfg) {
  if (cfg.dA < 2) {
    throw ConfigError("config: dA must be at least 2");
  }
  if (cfg.dB < cfg.dA) {
    throw ConfigError("config: ancilla dimension must satisfy dB >= dA");
  }
  if (cfg.cube_qubits < 1 || (Index{1} << cfg.cube_qubits) != cfg.dA * cfg.dB) {
    throw ConfigError("config: cube qubit count does not match dA*dB");
  }
  if (cfg.repetitions < 1) {
    throw ConfigError("config: repetitions must be at least 1");
  }
  if (cfg.copy_counts.empty()) {
    throw ConfigError("config: copy_counts must be nonempty");
  }
  const std::int64_t set_count = pow_int(3, cfg.cube_qubits);
  for (const std::int64_t n : cfg.copy_counts) {
    if (n != 0 && n < set_count) {
      throw ConfigError("config: each copy count must cover every basis set (or be 0 for exact)");
    }
  }
  if (cfg.channel.kind == ChannelSpec::Kind::PhaseDamping &&
      !(cfg.channel.lambda >= 0.0 && cfg.channel.lambda <= 1.0)) {
    throw ConfigError("config: phase damping lambda must lie in [0, 1]");
  }
  if (cfg.channel.kind == ChannelSpec::Kind::Random &&
      (cfg.channel.rank < 1 || cfg.channel.rank > cfg.dA * cfg.dA)) {
    throw ConfigError("config: random channel rank must lie in [1, dA^2]");
  }
  if (cfg.channel.kind == ChannelSpec::Kind::File && cfg.channel.path.empty()) {
    throw ConfigError("config: file channel needs a path");
  }
}

KrausChannel build_channel(const ChannelSpec& spec) {
  switch (spec.kind) {
    case ChannelSpec::Kind::PhaseDamping:
      return phase_damping(spec.lambda);
    case ChannelSpec::Kind::Random:
      return random_channel(2, spec.rank, spec.tp, spec.seed);
    case ChannelSpec::Kind::File:
      return load_channel_file(spec.path);
  }
  throw ConfigError("build_channel: unknown channel kind");
}

DensityMatrix build_input_state(const InputStateSpec& spec, Index dA, Index dB) {
  switch (spec.kind) {
    case InputStateSpec::Kind::MaximallyEntangled:
      if (dA != dB) {
        throw ConfigError("maximally entangled input requires dA == dB");
      }
      return maximally_entangled_state(dA);
    case InputStateSpec::Kind::RandomFullSchmidt:
      return random_full_schmidt_state(dA, dB, spec.seed);
  }
  throw ConfigError("build_input_state: unknown input kind");
}

ExperimentContext build_context(const ExperimentConfig& cfg) {
  KrausChannel channel = build_channel(cfg.channel);
  ProcessMatrix truth = kraus_to_process(channel);
  DensityMatrix input = build_input_state(cfg.input, cfg.dA, cfg.dB);
  SchmidtDecomposition schmidt = operator_schmidt(input, cfg.dA, cfg.dB);
  MeasurementSuite suite = cube_measurements(cfg.cube_qubits);
  DensityMatrix output = evolve_input(channel, input, cfg.dA, cfg.dB);
  std::vector<RealVector> probabilities = born_probabilities(output, suite);
  return ExperimentContext{std::move(channel), std::move(truth),  std::move(input),
                           std::move(schmidt), std::move(suite),  std::move(output),
                           std::move(probabilities)};
}

ReconstructionResult reconstruct_trial(const ExperimentContext& ctx, const ExperimentConfig& cfg,
                                       std::int64_t n_copies, int trial_index) {
  if (n_copies == 0) {
    return aapt_reconstruct_from_probabilities(ctx.probabilities, ctx.schmidt, ctx.suite,
                                               cfg.mode);
  }
  const MeasurementRecord record =
      sample_counts(ctx.output, ctx.suite, n_copies,
                    derive_stream(cfg.base_seed, static_cast<std::uint64_t>(trial_index)));
  return aapt_reconstruct(record, ctx.schmidt, ctx.suite, cfg.mode);
}

TrialResult run_trial(const ExperimentConfig& cfg, std::int64_t n_copies, int trial_index) {
  return run_trial_in_context(build_context(cfg), cfg, n_copies, trial_index);
}

SweepResult mse_sweep(const ExperimentConfig& cfg, int jobs) {
  validate_config(cfg);
  const ExperimentContext ctx = build_context(cfg);
  const RealMatrix c = measurement_parameterization_C(ctx.suite);

  SweepResult result;
  result.rows.reserve(cfg.copy_counts.size());
  for (const std::int64_t n : cfg.copy_counts) {
    SweepRow row;
    row.n_copies = n;
    row.per_trial = run_trials(ctx, cfg, n, jobs);
    double sum = 0.0;
    for (const double m : row.per_trial) sum += m;
    row.mean_mse = sum / static_cast<double>(row.per_trial.size());
    double variance = 0.0;
    for (const double m : row.per_trial) {
      variance += (m - row.mean_mse) * (m - row.mean_mse);
    }
    const auto r = static_cast<double>(row.per_trial.size());
    row.std_err = r > 1 ? std::sqrt(variance / (r - 1.0) / r) : 0.0;
    row.bound = n == 0 ? 0.0
                       : theoretical_bound(ctx.truth.traceMap, ctx.suite.set_count(), c,
                                           ctx.schmidt.coefficients, n, cfg.dA, cfg.dB);
    result.rows.push_back(std::move(row));
  }
  return result;
}

double theoretical_bound(const Matrix& trace_map, Index set_count, const RealMatrix& c,
                         const RealVector& schmidt_coefficients, std::int64_t n_copies,
                         Index dA, Index dB) {
  if (n_copies < 1) {
    throw DomainError("theoretical_bound: copy count must be at least 1");
  }
  const Index d2 = c.cols();
  Eigen::ColPivHouseholderQR<RealMatrix> qr(c);
  if (qr.rank() < d2) {
    throw CompletenessError("theoretical_bound: parameterization matrix is rank deficient");
  }
  const RealMatrix gram = c.transpose() * c;
  const double design_trace = gram.inverse().trace();

  double inverse_square_sum = 0.0;
  for (Index j = 0; j < schmidt_coefficients.size(); ++j) {
    const double s = schmidt_coefficients[j];
    if (s <= 0.0) {
      throw DomainError("theoretical_bound: Schmidt coefficients must be positive");
    }
    inverse_square_sum += 1.0 / (s * s);
  }

  const double dim_factor = static_cast<double>(dA) * std::sqrt(static_cast<double>(dB));
  return dim_factor * trace_map.trace().real() *
         std::sqrt(static_cast<double>(set_count) * design_trace) *
         std::sqrt(inverse_square_sum) / std::sqrt(static_cast<double>(n_copies));
}

InputComparison compare_input_states(const ExperimentConfig& cfg, int jobs) {
  ExperimentConfig optimal_cfg = cfg;
  optimal_cfg.input.kind = InputStateSpec::Kind::MaximallyEntangled;
  ExperimentConfig random_cfg = cfg;
  random_cfg.input.kind = InputStateSpec::Kind::RandomFullSchmidt;
  // Same base_seed: the per-(N, trial) sampling substreams are shared, so
  // the two arms see paired noise.
  return InputComparison{mse_sweep(optimal_cfg, jobs), mse_sweep(random_cfg, jobs)};
}

LogLogFit fit_loglog_slope(const SweepResult& result) {
  if (result.rows.size() < 3) {
    throw DomainError("fit_loglog_slope: need at least three rows");
  }
  const auto n = static_cast<double>(result.rows.size());
  double sx = 0.0;
  double sy = 0.0;
  for (const SweepRow& row : result.rows) {
    if (row.n_copies < 1 || row.mean_mse <= 0.0) {
      throw DomainError("fit_loglog_slope: rows must have positive N and mean MSE");
    }
    sx += std::log(static_cast<double>(row.n_copies));
    sy += std::log(row.mean_mse);
  }
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (const SweepRow& row : result.rows) {
    const double dx = std::log(static_cast<double>(row.n_copies)) - mx;
    const double dy = std::log(row.mean_mse) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) {
    throw DomainError("fit_loglog_slope: copy counts must not be all equal");
  }
  LogLogFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r2 = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return fit;
}

}  // namespace aapt
