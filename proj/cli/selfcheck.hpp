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

#include <iosfwd>
#include <string>
#include <vector>

namespace cvgrav::cli {

struct CheckResult {
  std::string name;
  bool passed = false;
  double value = 0.0;      // measured deviation or quantity
  double tolerance = 0.0;  // bound the value was held to
  std::string detail;
};

struct SelfcheckOptions {
  /// Multiplies G in the Gaussian track of the rate-equality checks.
  double gravity_factor = 1.0;
};

std::vector<CheckResult> run_selfcheck(const SelfcheckOptions& options = {});
void print_checks(std::ostream& out, const std::vector<CheckResult>& checks);

}  // namespace cvgrav::cli
