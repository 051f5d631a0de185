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

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "aapt/errors.hpp"
#include "aapt/experiments.hpp"
#include "aapt/rng.hpp"
#include "aapt/serialization.hpp"

namespace {

using namespace aapt;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitNumerical = 2;

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string iso_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

Json run_metadata(const ExperimentConfig& cfg) {
  return Json{{"timestamp", iso_timestamp()}, {"config", config_to_json(cfg)}};
}

void print_matrix(std::ostream& out, const std::string& name, const Matrix& m) {
  out << name << " (" << m.rows() << "x" << m.cols() << "):\n";
  for (Index r = 0; r < m.rows(); ++r) {
    out << "  ";
    for (Index c = 0; c < m.cols(); ++c) {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%+.6f%+.6fi", m(r, c).real(), m(r, c).imag());
      out << buf << (c + 1 < m.cols() ? "  " : "");
    }
    out << "\n";
  }
}

struct CommonOptions {
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed_override;
  std::optional<std::string> mode_override;
  int jobs = 1;
};

void add_common(CLI::App* cmd, CommonOptions& opts, bool needs_config) {
  auto* config = cmd->add_option("--config", opts.config_path, "Experiment config JSON");
  if (needs_config) config->required();
  cmd->add_option("--out", opts.out_dir, "Output directory")->required();
  cmd->add_option("--seed", opts.seed_override, "Override base_seed");
  cmd->add_option("--mode", opts.mode_override, "Override reconstruction mode (tp|nontp)")
      ->check(CLI::IsMember({"tp", "nontp"}));
  cmd->add_option("--jobs", opts.jobs, "Worker thread cap for sweep trials")
      ->check(CLI::Range(1, 256));
}

ExperimentConfig load_and_validate(const CommonOptions& opts) {
  ExperimentConfig cfg = load_config_file(opts.config_path);
  if (opts.seed_override) {
    cfg.base_seed = *opts.seed_override;
  }
  if (opts.mode_override) {
    if (*opts.mode_override == "tp") {
      cfg.mode = ReconstructionMode::TP;
    } else if (*opts.mode_override == "nontp") {
      cfg.mode = ReconstructionMode::NonTP;
    } else {
      throw ConfigError("--mode must be tp or nontp");
    }
  }
  validate_config(cfg);
  return cfg;
}

std::string sweep_trials_csv(const SweepResult& result) {
  std::string csv = "N,trial,mse\n";
  for (const SweepRow& row : result.rows) {
    for (std::size_t t = 0; t < row.per_trial.size(); ++t) {
      csv += std::to_string(row.n_copies) + "," + std::to_string(t) + "," +
             fmt17(row.per_trial[t]) + "\n";
    }
  }
  return csv;
}

std::string sweep_summary_csv(const SweepResult& result) {
  std::string csv = "N,mean_mse,std_err,bound\n";
  for (const SweepRow& row : result.rows) {
    csv += std::to_string(row.n_copies) + "," + fmt17(row.mean_mse) + "," +
           fmt17(row.std_err) + "," + fmt17(row.bound) + "\n";
  }
  return csv;
}

int cmd_channel_show(double lambda, bool as_json) {
  const KrausChannel channel = phase_damping(lambda);
  const ProcessMatrix process = kraus_to_process(channel);
  if (as_json) {
    Json out{{"kraus", kraus_to_json(channel)}, {"process", process_to_json(process)}};
    std::cout << out.dump(2) << "\n";
    return kExitOk;
  }
  std::cout << "phase damping channel, lambda = " << fmt17(lambda) << "\n\n";
  for (std::size_t k = 0; k < channel.operators.size(); ++k) {
    print_matrix(std::cout, "Kraus operator " + std::to_string(k + 1), channel.operators[k]);
  }
  std::cout << "\n";
  print_matrix(std::cout, "process matrix X", process.X);
  print_matrix(std::cout, "trace map Tr_first(X)", process.traceMap);
  return kExitOk;
}

int cmd_simulate(const CommonOptions& opts) {
  const ExperimentConfig cfg = load_and_validate(opts);
  const ExperimentContext ctx = build_context(cfg);
  const std::int64_t n = cfg.copy_counts.front();
  std::cerr << "simulate: one reconstruction at N = " << n << "\n";

  const ReconstructionResult result = reconstruct_trial(ctx, cfg, n, /*trial_index=*/0);
  const double distance = process_distance(result.xhat, ctx.truth);
  Json report = reconstruction_report(result, distance * distance);
  report["metadata"] = run_metadata(cfg);
  write_file_atomic((std::filesystem::path(opts.out_dir) / "reconstruction.json").string(),
                    report.dump(2) + "\n");
  std::cerr << "simulate: wrote reconstruction.json (mse = " << fmt17(distance * distance)
            << ")\n";
  return kExitOk;
}

int cmd_sweep(const CommonOptions& opts) {
  const ExperimentConfig cfg = load_and_validate(opts);
  std::cerr << "sweep: " << cfg.copy_counts.size() << " copy counts x " << cfg.repetitions
            << " repetitions\n";
  const SweepResult result = mse_sweep(cfg, opts.jobs);

  Json report = sweep_to_json(result);
  report["metadata"] = run_metadata(cfg);
  const std::filesystem::path dir(opts.out_dir);
  write_file_atomic((dir / "sweep_trials.csv").string(), sweep_trials_csv(result));
  write_file_atomic((dir / "sweep_summary.csv").string(), sweep_summary_csv(result));
  write_file_atomic((dir / "sweep.json").string(), report.dump(2) + "\n");
  std::cerr << "sweep: wrote sweep_trials.csv, sweep_summary.csv, sweep.json\n";
  return kExitOk;
}

int cmd_compare_inputs(const CommonOptions& opts) {
  const ExperimentConfig cfg = load_and_validate(opts);
  std::cerr << "compare-inputs: paired sweeps, shared sampling seeds\n";
  const InputComparison cmp = compare_input_states(cfg, opts.jobs);

  std::string csv = "N,mean_mse_optimal,std_err_optimal,mean_mse_random,std_err_random\n";
  for (std::size_t i = 0; i < cmp.optimal.rows.size(); ++i) {
    const SweepRow& opt = cmp.optimal.rows[i];
    const SweepRow& rnd = cmp.random.rows[i];
    csv += std::to_string(opt.n_copies) + "," + fmt17(opt.mean_mse) + "," +
           fmt17(opt.std_err) + "," + fmt17(rnd.mean_mse) + "," + fmt17(rnd.std_err) + "\n";
  }
  Json report{{"optimal", sweep_to_json(cmp.optimal)}, {"random", sweep_to_json(cmp.random)}};
  report["metadata"] = run_metadata(cfg);
  const std::filesystem::path dir(opts.out_dir);
  write_file_atomic((dir / "compare_summary.csv").string(), csv);
  write_file_atomic((dir / "compare.json").string(), report.dump(2) + "\n");
  std::cerr << "compare-inputs: wrote compare_summary.csv, compare.json\n";
  return kExitOk;
}

int cmd_validate(std::uint64_t seed) {
  // Noiseless end-to-end check: with exact Born probabilities the pipeline
  // must reproduce the process matrix of random channels to 1e-8.
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    ExperimentConfig cfg;
    cfg.channel.kind = ChannelSpec::Kind::Random;
    cfg.channel.tp = i < 5;
    cfg.channel.rank = 1 + (i % 4);
    cfg.channel.seed = derive_stream(seed, static_cast<std::uint64_t>(i));
    cfg.mode = i < 5 ? ReconstructionMode::TP : ReconstructionMode::NonTP;
    cfg.copy_counts = {0};
    validate_config(cfg);
    const ExperimentContext ctx = build_context(cfg);
    const ReconstructionResult result = reconstruct_trial(ctx, cfg, 0, 0);
    const double residual = process_distance(result.xhat, ctx.truth);
    std::cerr << "validate: channel " << i << (cfg.channel.tp ? " (tp)" : " (nontp)")
              << " residual = " << fmt17(residual) << "\n";
    worst = std::max(worst, residual);
  }
  std::cout << "max residual: " << fmt17(worst) << "\n";
  if (worst >= 1e-8) {
    std::cerr << "validate: FAILED (residual above 1e-8)\n";
    return kExitNumerical;
  }
  std::cerr << "validate: ok\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ancilla-assisted quantum process tomography simulator"};
  app.require_subcommand(0, 1);

  bool print_defaults = false;
  app.add_flag("--print-defaults", print_defaults,
               "Print the default experiment config as JSON and exit");

  double lambda = 2.0 / 3.0;
  bool show_json = false;
  auto* show = app.add_subcommand("channel-show",
                                  "Print the Kraus and process matrices of a phase damping channel");
  show->add_option("--lambda", lambda, "Scattering probability in [0, 1]");
  show->add_flag("--json", show_json, "Emit JSON instead of formatted matrices");

  CommonOptions sim_opts;
  auto* simulate = app.add_subcommand("simulate", "One reconstruction at the first copy count");
  add_common(simulate, sim_opts, /*needs_config=*/true);

  CommonOptions sweep_opts;
  auto* sweep = app.add_subcommand("sweep", "MSE sweep over the configured copy counts");
  add_common(sweep, sweep_opts, /*needs_config=*/true);

  CommonOptions cmp_opts;
  auto* compare = app.add_subcommand("compare-inputs",
                                     "Paired sweep: maximally entangled vs random input state");
  add_common(compare, cmp_opts, /*needs_config=*/true);

  std::uint64_t validate_seed = 0;
  auto* validate = app.add_subcommand("validate", "Noiseless end-to-end self check");
  validate->add_option("--seed", validate_seed, "Seed for the validation channels");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Help and version exit 0; every flag or argument problem is a config
    // error.
    return app.exit(e) == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (print_defaults) {
      std::cout << config_to_json(ExperimentConfig{}).dump(2) << "\n";
      return kExitOk;
    }
    if (show->parsed()) {
      if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw ConfigError("--lambda must lie in [0, 1]");
      }
      return cmd_channel_show(lambda, show_json);
    }
    if (simulate->parsed()) return cmd_simulate(sim_opts);
    if (sweep->parsed()) return cmd_sweep(sweep_opts);
    if (compare->parsed()) return cmd_compare_inputs(cmp_opts);
    if (validate->parsed()) return cmd_validate(validate_seed);
    std::cerr << app.help();
    return kExitConfig;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
}
