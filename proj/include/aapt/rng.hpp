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

#include <array>
#include <cstdint>

namespace aapt {

/// Counter-based random generator (Philox2x64-10).
///
/// A (key, stream) pair addresses an independent sequence, so substreams for
/// different trials and measurement sets never overlap no matter how many
/// numbers each consumer draws. Output is identical across platforms and
/// thread schedules.
class Philox {
 public:
  explicit Philox(std::uint64_t key, std::uint64_t stream = 0);

  std::uint64_t next_u64();

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();

  /// Standard normal deviate (Box-Muller, deterministic).
  double normal();

  /// Uniform integer in [0, n). n must be positive.
  std::uint64_t uniform_below(std::uint64_t n);

 private:
  std::array<std::uint64_t, 2> block(std::uint64_t index) const;

  std::uint64_t key_;
  std::uint64_t stream_;
  std::uint64_t block_index_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  int buffered_ = 0;
  double spare_normal_ = 0.0;
  bool has_spare_normal_ = false;
};

/// SplitMix64 finalizer; bijective 64-bit mixing.
std::uint64_t mix64(std::uint64_t x);

/// Derives a substream identifier from up to three labels. Used to give each
/// (trial, measurement set, attempt) its own Philox stream.
std::uint64_t derive_stream(std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0);

}  // namespace aapt
