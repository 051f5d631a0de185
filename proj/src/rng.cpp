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

#include "aapt/rng.hpp"

#include <cmath>

#include "aapt/errors.hpp"

namespace aapt {

namespace {

// Philox2x64 round constants (Salmon et al., "Parallel random numbers: as
// easy as 1, 2, 3").
constexpr std::uint64_t kPhiloxM = 0xD2B74407B1CE6E93ULL;
constexpr std::uint64_t kPhiloxW = 0x9E3779B97F4A7C15ULL;

inline void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi, std::uint64_t& lo) {
  const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  hi = static_cast<std::uint64_t>(p >> 64);
  lo = static_cast<std::uint64_t>(p);
}

constexpr double kTwoPi = 6.283185307179586476925286766559;

}  // namespace

Philox::Philox(std::uint64_t key, std::uint64_t stream) : key_(key), stream_(stream) {}

std::array<std::uint64_t, 2> Philox::block(std::uint64_t index) const {
  std::uint64_t x0 = index;
  std::uint64_t x1 = stream_;
  std::uint64_t key = key_;
  for (int round = 0; round < 10; ++round) {
    std::uint64_t hi;
    std::uint64_t lo;
    mulhilo(kPhiloxM, x0, hi, lo);
    x0 = hi ^ key ^ x1;
    x1 = lo;
    key += kPhiloxW;
  }
  return {x0, x1};
}

std::uint64_t Philox::next_u64() {
  if (buffered_ == 0) {
    buffer_ = block(block_index_++);
    buffered_ = 2;
  }
  return buffer_[2 - buffered_--];
}

double Philox::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Philox::normal() {
  if (has_spare_normal_) {
    has_spare_normal_ = false;
    return spare_normal_;
  }
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  spare_normal_ = radius * std::sin(kTwoPi * u2);
  has_spare_normal_ = true;
  return radius * std::cos(kTwoPi * u2);
}

std::uint64_t Philox::uniform_below(std::uint64_t n) {
  if (n == 0) {
    throw DomainError("uniform_below: n must be positive");
  }
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
}

std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return x;
}

std::uint64_t derive_stream(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  std::uint64_t h = mix64(a + 0x9E3779B97F4A7C15ULL);
  h = mix64(h ^ (b + 0xBF58476D1CE4E5B9ULL));
  h = mix64(h ^ (c + 0x94D049BB133111EBULL));
  return h;
}

}  // namespace aapt
