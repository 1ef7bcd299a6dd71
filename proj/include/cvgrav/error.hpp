// Copyright 2026 The cvgrav Authors
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

#include <cstdio>
#include <stdexcept>
#include <string>

namespace cvgrav {

// Root of every exception thrown by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed arguments: nonpositive masses, non-symmetric matrices, mismatched grids.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// A covariance matrix or density matrix that does not describe a quantum state.
class PhysicalityError : public Error {
 public:
  using Error::Error;
};

// Truncation or coverage rule violated (Fock cutoff too small, grid too narrow).
class GuardViolation : public Error {
 public:
  using Error::Error;
};

// Three significant digits in exponent form, for small weights in messages.
inline std::string format_weight(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.3e", value);
  return buffer;
}

}  // namespace cvgrav
