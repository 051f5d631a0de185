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

#include <stdexcept>
#include <string>

namespace aapt {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operand shapes are incompatible with the operation.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// A scalar argument lies outside its admissible range.
class DomainError : public Error {
 public:
  using Error::Error;
};

// An input violates a structural precondition (hermiticity, unitarity, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// The measurement suite is not informationally complete.
class CompletenessError : public Error {
 public:
  using Error::Error;
};

// An intermediate estimate is too degenerate to continue (e.g. the trace map
// of the projected estimate is singular on the trace-preserving path).
class DegenerateEstimateError : public Error {
 public:
  using Error::Error;
};

// Randomized generation failed to produce a valid object within its retry
// budget.
class GenerationError : public Error {
 public:
  using Error::Error;
};

// A configuration file failed to parse or validate.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace aapt
