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

#include "aapt/serialization.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

#include "aapt/errors.hpp"

namespace aapt {

namespace {

Json parse_or_throw(const std::string& text, const std::string& origin) {
  Json j = Json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) {
    throw ConfigError(origin + ": invalid JSON");
  }
  return j;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError("cannot open file: " + path);
  }
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

double number_or_throw(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw ConfigError(std::string("missing or non-numeric field: ") + key);
  }
  return j.at(key).get<double>();
}

}  // namespace

Json matrix_to_json(const Matrix& m) {
  Json re = Json::array();
  Json im = Json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) {
      re.push_back(m(r, c).real());
      im.push_back(m(r, c).imag());
    }
  }
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("re") ||
      !j.contains("im")) {
    throw ConfigError("matrix: expected object with rows, cols, re, im");
  }
  const auto rows = j.at("rows").get<Index>();
  const auto cols = j.at("cols").get<Index>();
  if (rows < 1 || cols < 1) {
    throw ConfigError("matrix: rows and cols must be positive");
  }
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  if (!re.is_array() || !im.is_array() ||
      static_cast<Index>(re.size()) != rows * cols ||
      static_cast<Index>(im.size()) != rows * cols) {
    throw ConfigError("matrix: entry count does not equal rows * cols");
  }
  Matrix m(rows, cols);
  try {
    for (Index r = 0; r < rows; ++r) {
      for (Index c = 0; c < cols; ++c) {
        const auto at = static_cast<std::size_t>(r * cols + c);
        const double x = re.at(at).get<double>();
        const double y = im.at(at).get<double>();
        if (!std::isfinite(x) || !std::isfinite(y)) {
          throw ConfigError("matrix: entries must be finite");
        }
        m(r, c) = Complex(x, y);
      }
    }
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("matrix: ") + e.what());
  }
  return m;
}

Json kraus_to_json(const KrausChannel& channel) {
  Json ops = Json::array();
  for (const Matrix& op : channel.operators) {
    ops.push_back(matrix_to_json(op));
  }
  return Json{{"dimA", channel.dim}, {"kraus", std::move(ops)}};
}

KrausChannel kraus_from_json(const Json& j) {
  if (!j.contains("dimA") || !j.contains("kraus") || !j.at("kraus").is_array() ||
      j.at("kraus").empty()) {
    throw ConfigError("channel: expected {dimA, kraus: [...]}");
  }
  std::vector<Matrix> ops;
  for (const Json& op : j.at("kraus")) {
    ops.push_back(matrix_from_json(op));
  }
  return KrausChannel(j.at("dimA").get<Index>(), std::move(ops));
}

Json process_to_json(const ProcessMatrix& process) {
  return Json{{"dimA", process.dimA}, {"X", matrix_to_json(process.X)}};
}

ProcessMatrix process_from_json(const Json& j) {
  if (!j.contains("dimA") || !j.contains("X")) {
    throw ConfigError("process matrix: expected {dimA, X}");
  }
  return ProcessMatrix(j.at("dimA").get<Index>(), matrix_from_json(j.at("X")));
}

KrausChannel load_channel_file(const std::string& path) {
  const Json j = parse_or_throw(read_file(path), path);
  if (j.contains("kraus")) {
    return kraus_from_json(j);
  }
  if (j.contains("X")) {
    return process_to_kraus(process_from_json(j));
  }
  throw ConfigError(path + ": channel file needs a kraus or X field");
}

Json suite_to_json(const MeasurementSuite& suite) {
  Json sets = Json::array();
  for (const auto& set : suite.sets) {
    Json group = Json::array();
    for (const Matrix& op : set) {
      group.push_back(matrix_to_json(op));
    }
    sets.push_back(std::move(group));
  }
  return Json{{"dim", suite.dim}, {"sets", std::move(sets)}};
}

Json record_to_json(const MeasurementRecord& record) {
  return Json{{"seed", record.seed},
              {"N", record.total_copies},
              {"copiesPerSet", record.copies_per_set},
              {"discarded", record.discarded},
              {"counts", record.counts}};
}

MeasurementRecord record_from_json(const Json& j) {
  MeasurementRecord record;
  record.seed = j.at("seed").get<std::uint64_t>();
  record.total_copies = j.at("N").get<std::int64_t>();
  record.copies_per_set = j.at("copiesPerSet").get<std::int64_t>();
  record.discarded = j.value("discarded", std::int64_t{0});
  record.counts = j.at("counts").get<std::vector<std::vector<std::int64_t>>>();
  if (record.copies_per_set < 1) {
    throw ConfigError("record: copiesPerSet must be positive");
  }
  return record;
}

Json reconstruction_report(const ReconstructionResult& result, std::optional<double> mse) {
  const TssDiagnostics& diag = result.diagnostics;
  Json diagnostics{
      {"eigsK", std::vector<double>(diag.eigs_k.begin(), diag.eigs_k.end())},
      {"clampedZ", std::vector<double>(diag.clamped_z.begin(), diag.clamped_z.end())},
      {"ehat", std::vector<double>(diag.ehat.begin(), diag.ehat.end())},
      {"c", diag.positive_count},
      {"residuals",
       std::vector<double>(diag.constraint_residuals.begin(), diag.constraint_residuals.end())},
      {"degenerate", diag.degenerate},
  };
  if (diag.bar_e.size() > 0) {
    diagnostics["barE"] = std::vector<double>(diag.bar_e.begin(), diag.bar_e.end());
    diagnostics["tildeE"] = std::vector<double>(diag.tilde_e.begin(), diag.tilde_e.end());
  }
  Json report{{"Xhat", matrix_to_json(result.xhat.X)},
              {"mode", result.mode == ReconstructionMode::TP ? "tp" : "nontp"},
              {"diagnostics", std::move(diagnostics)}};
  if (mse.has_value()) {
    report["mse"] = *mse;
  }
  return report;
}

Json sweep_to_json(const SweepResult& result) {
  Json rows = Json::array();
  for (const SweepRow& row : result.rows) {
    rows.push_back(Json{{"N", row.n_copies},
                        {"mean_mse", row.mean_mse},
                        {"std_err", row.std_err},
                        {"bound", row.bound},
                        {"per_trial", row.per_trial}});
  }
  return Json{{"rows", std::move(rows)}};
}

Json config_to_json(const ExperimentConfig& cfg) {
  Json channel;
  switch (cfg.channel.kind) {
    case ChannelSpec::Kind::PhaseDamping:
      channel = Json{{"type", "phase_damping"}, {"lambda", cfg.channel.lambda}};
      break;
    case ChannelSpec::Kind::Random:
      channel = Json{{"type", "random"},
                     {"tp", cfg.channel.tp},
                     {"rank", cfg.channel.rank},
                     {"seed", cfg.channel.seed}};
      break;
    case ChannelSpec::Kind::File:
      channel = Json{{"type", "file"}, {"path", cfg.channel.path}};
      break;
  }
  Json input = cfg.input.kind == InputStateSpec::Kind::MaximallyEntangled
                   ? Json{{"type", "maximally_entangled"}}
                   : Json{{"type", "random_full_schmidt"}, {"seed", cfg.input.seed}};
  return Json{{"channel", std::move(channel)},
              {"dA", cfg.dA},
              {"dB", cfg.dB},
              {"input_state", std::move(input)},
              {"measurements", Json{{"type", "cube"}, {"qubits", cfg.cube_qubits}}},
              {"copy_counts", cfg.copy_counts},
              {"repetitions", cfg.repetitions},
              {"base_seed", cfg.base_seed},
              {"mode", cfg.mode == ReconstructionMode::TP ? "tp" : "nontp"}};
}

namespace {

ExperimentConfig config_from_json_impl(const Json& j) {
  ExperimentConfig cfg;
  if (j.contains("channel")) {
    const Json& ch = j.at("channel");
    const std::string type = ch.value("type", "phase_damping");
    if (type == "phase_damping") {
      cfg.channel.kind = ChannelSpec::Kind::PhaseDamping;
      cfg.channel.lambda = ch.contains("lambda") ? number_or_throw(ch, "lambda") : cfg.channel.lambda;
    } else if (type == "random") {
      cfg.channel.kind = ChannelSpec::Kind::Random;
      cfg.channel.tp = ch.value("tp", true);
      cfg.channel.rank = ch.value("rank", Index{2});
      cfg.channel.seed = ch.value("seed", std::uint64_t{1});
    } else if (type == "file") {
      cfg.channel.kind = ChannelSpec::Kind::File;
      cfg.channel.path = ch.value("path", std::string{});
    } else {
      throw ConfigError("config: unknown channel type: " + type);
    }
  }
  cfg.dA = j.value("dA", Index{2});
  cfg.dB = j.value("dB", Index{2});
  if (j.contains("input_state")) {
    const Json& in = j.at("input_state");
    const std::string type = in.value("type", "maximally_entangled");
    if (type == "maximally_entangled") {
      cfg.input.kind = InputStateSpec::Kind::MaximallyEntangled;
    } else if (type == "random_full_schmidt") {
      cfg.input.kind = InputStateSpec::Kind::RandomFullSchmidt;
      cfg.input.seed = in.value("seed", std::uint64_t{1});
    } else {
      throw ConfigError("config: unknown input state type: " + type);
    }
  }
  if (j.contains("measurements")) {
    const Json& meas = j.at("measurements");
    const std::string type = meas.value("type", "cube");
    if (type != "cube") {
      throw ConfigError("config: unknown measurement type: " + type);
    }
    cfg.cube_qubits = meas.value("qubits", 2);
  }
  if (j.contains("copy_counts")) {
    cfg.copy_counts = j.at("copy_counts").get<std::vector<std::int64_t>>();
  }
  cfg.repetitions = j.value("repetitions", cfg.repetitions);
  cfg.base_seed = j.value("base_seed", cfg.base_seed);
  const std::string mode = j.value("mode", "tp");
  if (mode == "tp") {
    cfg.mode = ReconstructionMode::TP;
  } else if (mode == "nontp") {
    cfg.mode = ReconstructionMode::NonTP;
  } else {
    throw ConfigError("config: mode must be tp or nontp");
  }
  return cfg;
}

}  // namespace

ExperimentConfig config_from_json(const Json& j) {
  if (!j.is_object()) {
    throw ConfigError("config: expected a JSON object");
  }
  try {
    return config_from_json_impl(j);
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

ExperimentConfig load_config_file(const std::string& path) {
  try {
    return config_from_json(parse_or_throw(read_file(path), path));
  } catch (const Json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) {
    fs::create_directories(target.parent_path());
  }
  const fs::path temp = target.string() + ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw Error("cannot write file: " + temp.string());
    }
    out << content;
    out.flush();
    if (!out) {
      throw Error("write failed: " + temp.string());
    }
  }
  fs::rename(temp, target);
}

}  // namespace aapt
