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
#include "cvgrav/scenario.hpp"

#include <algorithm>
#include <cmath>

#include "cvgrav/error.hpp"

namespace cvgrav {

void ScenarioConfig::validate() const {
  if (!(M_A >= 0.0) || !(M_B >= 0.0)) {
    throw InvalidInput("scenario: masses must be nonnegative");
  }
  if (!(D > 0.0)) {
    throw InvalidInput("scenario: separation D must be positive");
  }
  if (!(d >= 0.0) || !(D > d)) {
    throw InvalidInput("scenario: require D > d >= 0");
  }
  if (!(x0 > 0.0)) {
    throw InvalidInput("scenario: length scale x0 must be positive");
  }
  if (!(G >= 0.0) || !(hbar > 0.0)) {
    throw InvalidInput("scenario: G must be nonnegative and hbar positive");
  }
  if (!std::is_sorted(t_grid.begin(), t_grid.end()) ||
      std::any_of(t_grid.begin(), t_grid.end(), [](double t) { return !(t >= 0.0); })) {
    throw InvalidInput("scenario: t_grid must be sorted and nonnegative");
  }
}

double DimensionlessScenario::cat_alpha(double d) const {
  // Branches at +-sqrt(2) alpha in units of x0 are d apart.
  return d / (2.0 * std::sqrt(2.0) * x0);
}

DimensionlessScenario to_dimensionless(const ScenarioConfig& scenario) {
  scenario.validate();
  DimensionlessScenario out;
  out.x0 = scenario.x0;
  out.lambda = 2.0 * scenario.G * scenario.M_A * scenario.M_B * scenario.x0 * scenario.x0 /
               (scenario.D * scenario.D * scenario.D);
  out.lambda_over_hbar = out.lambda / scenario.hbar;
  return out;
}

}  // namespace cvgrav
