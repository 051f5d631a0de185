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

#include <doctest.h>

#include <filesystem>

#include "aapt/errors.hpp"
#include "aapt/rng.hpp"
#include "test_helpers.hpp"

using namespace aapt;

TEST_CASE("matrix json round trip") {
  Philox rng(61, 0);
  const Matrix m = test::random_matrix(3, 5, rng);
  const Json j = matrix_to_json(m);
  CHECK(j.at("rows") == 3);
  CHECK(j.at("cols") == 5);
  CHECK((matrix_from_json(j) - m).norm() == 0.0);

  SUBCASE("row-major layout") {
    Matrix small(2, 2);
    small << Complex(1, 5), Complex(2, 6), Complex(3, 7), Complex(4, 8);
    const Json serialized = matrix_to_json(small);
    CHECK(serialized.at("re") == Json::array({1.0, 2.0, 3.0, 4.0}));
    CHECK(serialized.at("im") == Json::array({5.0, 6.0, 7.0, 8.0}));
  }

  SUBCASE("malformed inputs are rejected") {
    Json bad = matrix_to_json(m);
    bad["re"] = Json::array({1.0});
    CHECK_THROWS_AS(matrix_from_json(bad), ConfigError);

    Json nan_entry = matrix_to_json(Matrix::Identity(2, 2));
    nan_entry["re"][0] = std::nan("");
    CHECK_THROWS_AS(matrix_from_json(nan_entry), ConfigError);

    CHECK_THROWS_AS(matrix_from_json(Json::array()), ConfigError);
  }
}

TEST_CASE("channel files") {
  const KrausChannel channel = phase_damping(2.0 / 3.0);
  const ProcessMatrix process = kraus_to_process(channel);

  SUBCASE("kraus round trip") {
    const KrausChannel back = kraus_from_json(kraus_to_json(channel));
    REQUIRE(back.operators.size() == channel.operators.size());
    for (std::size_t k = 0; k < back.operators.size(); ++k) {
      CHECK((back.operators[k] - channel.operators[k]).norm() == 0.0);
    }
  }

  SUBCASE("process round trip") {
    const ProcessMatrix back = process_from_json(process_to_json(process));
    CHECK((back.X - process.X).norm() == 0.0);
  }

  SUBCASE("load from disk, both forms") {
    const auto dir = std::filesystem::temp_directory_path() / "aapt_serialization_test";
    std::filesystem::create_directories(dir);

    const auto kraus_path = (dir / "kraus.json").string();
    write_file_atomic(kraus_path, kraus_to_json(channel).dump());
    const ProcessMatrix via_kraus = kraus_to_process(load_channel_file(kraus_path));
    CHECK((via_kraus.X - process.X).norm() < 1e-12);

    const auto process_path = (dir / "process.json").string();
    write_file_atomic(process_path, process_to_json(process).dump());
    const ProcessMatrix via_process = kraus_to_process(load_channel_file(process_path));
    CHECK((via_process.X - process.X).norm() < 1e-10);

    CHECK_THROWS_AS(load_channel_file((dir / "missing.json").string()), ConfigError);
    write_file_atomic((dir / "broken.json").string(), "{not json");
    CHECK_THROWS_AS(load_channel_file((dir / "broken.json").string()), ConfigError);
    std::filesystem::remove_all(dir);
  }
}

TEST_CASE("record and suite export") {
  const MeasurementSuite suite = cube_measurements(2);
  const DensityMatrix bell = maximally_entangled_state(2);
  const MeasurementRecord record = sample_counts(bell, suite, 9'000, 17);

  const Json rj = record_to_json(record);
  CHECK(rj.at("seed") == 17);
  CHECK(rj.at("N") == 9'000);
  CHECK(rj.at("copiesPerSet") == 1'000);
  const MeasurementRecord back = record_from_json(rj);
  CHECK(back.counts == record.counts);
  CHECK(back.total_copies == record.total_copies);

  const Json sj = suite_to_json(suite);
  CHECK(sj.at("sets").size() == 9);
  CHECK(sj.at("sets").at(0).size() == 4);
  CHECK((matrix_from_json(sj.at("sets").at(0).at(0)) - suite.sets[0][0]).norm() == 0.0);
}

TEST_CASE("config json") {
  SUBCASE("defaults round trip") {
    const ExperimentConfig cfg;
    const ExperimentConfig back = config_from_json(config_to_json(cfg));
    CHECK(back.channel.kind == cfg.channel.kind);
    CHECK(back.channel.lambda == cfg.channel.lambda);
    CHECK(back.dA == cfg.dA);
    CHECK(back.copy_counts == cfg.copy_counts);
    CHECK(back.mode == cfg.mode);
  }

  SUBCASE("all variants round trip") {
    ExperimentConfig cfg;
    cfg.channel.kind = ChannelSpec::Kind::Random;
    cfg.channel.tp = false;
    cfg.channel.rank = 3;
    cfg.channel.seed = 21;
    cfg.input.kind = InputStateSpec::Kind::RandomFullSchmidt;
    cfg.input.seed = 9;
    cfg.copy_counts = {0, 9'000};
    cfg.repetitions = 77;
    cfg.base_seed = 123456;
    cfg.mode = ReconstructionMode::NonTP;
    const ExperimentConfig back = config_from_json(config_to_json(cfg));
    CHECK(back.channel.kind == cfg.channel.kind);
    CHECK(back.channel.tp == cfg.channel.tp);
    CHECK(back.channel.rank == cfg.channel.rank);
    CHECK(back.channel.seed == cfg.channel.seed);
    CHECK(back.input.kind == cfg.input.kind);
    CHECK(back.input.seed == cfg.input.seed);
    CHECK(back.copy_counts == cfg.copy_counts);
    CHECK(back.repetitions == cfg.repetitions);
    CHECK(back.base_seed == cfg.base_seed);
    CHECK(back.mode == cfg.mode);
  }

  SUBCASE("invalid configs are rejected") {
    CHECK_THROWS_AS(config_from_json(Json::parse(R"({"mode": "sideways"})")), ConfigError);
    CHECK_THROWS_AS(config_from_json(Json::parse(R"({"channel": {"type": "teleport"}})")),
                    ConfigError);
    CHECK_THROWS_AS(config_from_json(Json::array()), ConfigError);
  }
}

TEST_CASE("reconstruction report shape") {
  const DensityMatrix bell = maximally_entangled_state(2);
  const SchmidtDecomposition schmidt = operator_schmidt(bell, 2, 2);
  const MeasurementSuite suite = cube_measurements(2);
  const KrausChannel channel = phase_damping(2.0 / 3.0);
  const DensityMatrix out = evolve_input(channel, bell, 2, 2);
  const ReconstructionResult result = aapt_reconstruct_from_probabilities(
      born_probabilities(out, suite), schmidt, suite, ReconstructionMode::TP);

  const Json report = reconstruction_report(result, 1.25e-9);
  CHECK(report.at("mode") == "tp");
  CHECK(report.at("mse") == 1.25e-9);
  CHECK(report.at("diagnostics").contains("eigsK"));
  CHECK(report.at("diagnostics").contains("clampedZ"));
  CHECK(report.at("diagnostics").contains("ehat"));
  CHECK(report.at("diagnostics").contains("c"));
  CHECK(report.at("diagnostics").contains("residuals"));
  CHECK((matrix_from_json(report.at("Xhat")) - result.xhat.X).norm() == 0.0);

  const Json no_mse = reconstruction_report(result, std::nullopt);
  CHECK(!no_mse.contains("mse"));
}

TEST_CASE("write_file_atomic leaves no temporary behind") {
  const auto dir = std::filesystem::temp_directory_path() / "aapt_atomic_test";
  std::filesystem::create_directories(dir);
  const auto path = (dir / "nested" / "out.txt").string();
  write_file_atomic(path, "payload");
  CHECK(std::filesystem::exists(path));
  CHECK(!std::filesystem::exists(path + ".tmp"));
  std::filesystem::remove_all(dir);
}
