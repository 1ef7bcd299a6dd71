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

#include <array>

#include <Eigen/Dense>

#include "cvgrav/scenario.hpp"

// Two-mode Gaussian states in dimensionless quadratures ordered
// (X_A, P_A, X_B, P_B), with sigma_ij = <r_i r_j + r_j r_i> - 2 <r_i><r_j>.
// In this convention the vacuum has sigma = identity.
namespace cvgrav::gaussian {

using Covariance = Eigen::Matrix4d;
using Displacement = Eigen::Vector4d;

inline constexpr double kSymmetryTolerance = 1e-12;
inline constexpr double kPhysicalityTolerance = 1e-10;

/// Omega_ij = -i [r_i, r_j]: two 2x2 blocks (0, 1; -1, 0).
struct SymplecticForm {
  static Eigen::Matrix4d matrix();
};

class GaussianTwoModeState {
 public:
  /// Throws InvalidInput if sigma is not symmetric within 1e-12. Physicality is
  /// not required here because partial transposes are legitimately unphysical.
  explicit GaussianTwoModeState(const Covariance& sigma,
                                const Displacement& displacement = Displacement::Zero());

  /// Uncorrelated product state sigma = diag(2dX^2, 2dP^2, 2dX^2, 2dP^2).
  static GaussianTwoModeState product(double delta_X, double delta_P);
  static GaussianTwoModeState vacuum() { return GaussianTwoModeState(Covariance::Identity()); }

  const Covariance& sigma() const { return sigma_; }
  const Displacement& displacement() const { return displacement_; }

  /// sigma + i Omega >= 0, checked as every symplectic eigenvalue >= 1 - 1e-10.
  bool is_physical() const;
  void require_physical() const;

 private:
  Covariance sigma_;
  Displacement displacement_;
};

/// Generator K of the Heisenberg flow r(t) = e^{Kt} r(0) under H = lambda X_A X_B.
/// Only K(1,2) = K(3,0) = -lambda/hbar are nonzero.
struct CouplingGenerator {
  double lambda_over_hbar = 0.0;  // 1/time

  Eigen::Matrix4d matrix() const;
};

/// e^{Kt} through the general scaling-and-squaring exponential.
Eigen::Matrix4d transfer_matrix(const CouplingGenerator& generator, double t);
/// e^{Kt} = I + Kt, valid because K^2 = 0 for the bilinear coupling.
Eigen::Matrix4d transfer_matrix_nilpotent(const CouplingGenerator& generator, double t);

/// sigma(t) = e^{Kt} sigma e^{K^T t}, d(t) = e^{Kt} d. Negative t inverts the flow.
/// Throws PhysicalityError for unphysical input.
GaussianTwoModeState evolve(const GaussianTwoModeState& state,
                            const CouplingGenerator& generator, double t);

enum class Subsystem { A, B };

/// sigma -> P sigma P with P flipping the momentum of the chosen mode
/// (diag(1,1,1,-1) for B). An involution.
GaussianTwoModeState partial_transpose(const GaussianTwoModeState& state,
                                       Subsystem subsystem = Subsystem::B);

/// The two distinct absolute eigenvalues of i Omega sigma, ascending.
/// Throws InvalidInput for a non-symmetric sigma.
std::array<double, 2> symplectic_eigenvalues(const Covariance& sigma);

/// E_N = max(0, -log2 nu_min) with nu_min taken from the partial transpose.
double log_negativity_gaussian(const GaussianTwoModeState& state,
                               Subsystem subsystem = Subsystem::B);

/// dE_N/dt = 2 lambda dX^2 / (hbar ln 2) with dX = dx / x0, in 1/s.
double entangling_rate_gaussian(const ScenarioConfig& scenario, double dx);

/// Closed form nu_min^2 = 4 dX^2 dP^2 + 8 eta (eta - sqrt(dX^2 dP^2 + eta^2))
/// for the product initial state, with eta = dX^2 lambda t / hbar. Evaluated in
/// the cancellation-free form 4 a^2 / (eta + sqrt(a + eta^2))^2, a = dX^2 dP^2.
double nu_min_squared_closed_form(double delta_X, double delta_P, double eta);

}  // namespace cvgrav::gaussian
