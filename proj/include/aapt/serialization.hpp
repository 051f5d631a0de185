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

#include <optional>
#include <string>

#include <json.hpp>

#include "aapt/experiments.hpp"

namespace aapt {

using Json = nlohmann::json;

/// Matrix wire format: {rows, cols, re: [...], im: [...]} with row-major
/// real/imaginary arrays. Parsing rejects NaN/Inf entries and shape
/// mismatches.
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

/// Channel files: {"dimA": d, "kraus": [matrix...]} or {"dimA": d, "X": matrix}.
Json kraus_to_json(const KrausChannel& channel);
KrausChannel kraus_from_json(const Json& j);
Json process_to_json(const ProcessMatrix& process);
ProcessMatrix process_from_json(const Json& j);
KrausChannel load_channel_file(const std::string& path);

/// Suite export: list of sets of matrices.
Json suite_to_json(const MeasurementSuite& suite);

/// Record export: {seed, N, copiesPerSet, counts: [[...]]}.
Json record_to_json(const MeasurementRecord& record);
MeasurementRecord record_from_json(const Json& j);

/// Reconstruction report: {Xhat, mode, diagnostics: {...}, mse?}.
Json reconstruction_report(const ReconstructionResult& result, std::optional<double> mse);

/// Sweep mirror: rows of {N, mean_mse, std_err, bound, per_trial}.
Json sweep_to_json(const SweepResult& result);

/// Experiment configuration, one schema across library and CLI.
Json config_to_json(const ExperimentConfig& cfg);
ExperimentConfig config_from_json(const Json& j);
ExperimentConfig load_config_file(const std::string& path);

/// Writes content through a temporary file and renames it into place, so a
/// failure never leaves a partial output behind.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace aapt
