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

#include <vector>

namespace cvgrav {

/// Physical parameters of a two-particle experiment, SI units throughout.
struct ScenarioConfig {
  double M_A = 1e-14;      // kg
  double M_B = 1e-14;      // kg
  double D = 1e-4;         // centre-of-mass separation, m
  double d = 1e-7;         // superposition separation, m
  double x0 = 1e-7;        // length scale of the dimensionless quadratures, m
  double G = 6.67430e-11;  // m^3 kg^-1 s^-2
  double hbar = 1.054571817e-34;
  std::vector<double> t_grid;  // s

  /// Throws InvalidInput unless D > d >= 0, x0 > 0, masses >= 0 and the time
  /// grid is sorted and nonnegative.
  void validate() const;
};

/// Dimensionless view of a scenario. Every SI-to-dimensionless conversion in
/// the toolkit goes through to_dimensionless().
struct DimensionlessScenario {
  double lambda = 0.0;            // bilinear coupling 2 G M_A M_B x0^2 / D^3, J
  double lambda_over_hbar = 0.0;  // 1/s
  double x0 = 1.0;                // m

  double theta(double t) const { return lambda_over_hbar * t; }
  double delta_X(double dx) const { return dx / x0; }
  // Coherent amplitude of a cat whose branches sit a distance d apart.
  double cat_alpha(double d) const;
};

DimensionlessScenario to_dimensionless(const ScenarioConfig& scenario);

}  // namespace cvgrav
