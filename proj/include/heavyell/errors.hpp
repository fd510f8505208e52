// Copyright 2026 The heavyell Authors
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

namespace heavyell {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad parameter value (alpha out of range, k = 0, Im(eta) <= 0, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Inconsistent or degenerate configuration (zero-mass angular law, bad preset).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Shape mismatch between matrices or grids.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// LAPACK failure or a violated numerical invariant.
class NumericError : public Error {
 public:
  NumericError(const std::string& what, int info = 0)
      : Error(what + (info != 0 ? " (info=" + std::to_string(info) + ")" : "")),
        info_(info) {}
  int info() const noexcept { return info_; }

 private:
  int info_;
};

// Input violates a documented precondition (rank deficiency, too few replicas).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace heavyell
