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
#include "cvgrav/gaussian_states.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "cvgrav/error.hpp"
#include "cvgrav/linalg.hpp"

namespace cvgrav::gaussian {
namespace {

void require_symmetric(const Covariance& sigma) {
  if (!sigma.allFinite()) {
    throw InvalidInput("covariance matrix has non-finite entries");
  }
  const double scale = std::max(1.0, sigma.cwiseAbs().maxCoeff());
  if ((sigma - sigma.transpose()).cwiseAbs().maxCoeff() > kSymmetryTolerance * scale) {
    throw InvalidInput("covariance matrix is not symmetric");
  }
}

Eigen::Matrix4d momentum_flip(Subsystem subsystem) {
  Eigen::Vector4d diag(1.0, 1.0, 1.0, 1.0);
  diag(subsystem == Subsystem::B ? 3 : 1) = -1.0;
  return diag.asDiagonal();
}

}  // namespace

Eigen::Matrix4d SymplecticForm::matrix() {
  Eigen::Matrix4d omega = Eigen::Matrix4d::Zero();
  omega(0, 1) = 1.0;
  omega(1, 0) = -1.0;
  omega(2, 3) = 1.0;
  omega(3, 2) = -1.0;
  return omega;
}

GaussianTwoModeState::GaussianTwoModeState(const Covariance& sigma,
                                           const Displacement& displacement)
    : sigma_(0.5 * (sigma + sigma.transpose())), displacement_(displacement) {
  require_symmetric(sigma);
  if (!displacement.allFinite()) {
    throw InvalidInput("displacement vector has non-finite entries");
  }
}

GaussianTwoModeState GaussianTwoModeState::product(double delta_X, double delta_P) {
  if (!(delta_X > 0.0) || !(delta_P > 0.0)) {
    throw InvalidInput("quadrature spreads must be positive");
  }
  const double vx = 2.0 * delta_X * delta_X;
  const double vp = 2.0 * delta_P * delta_P;
  return GaussianTwoModeState(Eigen::Vector4d(vx, vp, vx, vp).asDiagonal().toDenseMatrix());
}

bool GaussianTwoModeState::is_physical() const {
  const auto nu = symplectic_eigenvalues(sigma_);
  // A non-positive-definite sigma can still have |eig(i Omega sigma)| >= 1.
  const Eigen::SelfAdjointEigenSolver<Covariance> eig(sigma_, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff() > 0.0 && nu[0] >= 1.0 - kPhysicalityTolerance;
}

void GaussianTwoModeState::require_physical() const {
  if (!is_physical()) {
    throw PhysicalityError("covariance matrix violates sigma + i Omega >= 0");
  }
}

Eigen::Matrix4d CouplingGenerator::matrix() const {
  Eigen::Matrix4d k = Eigen::Matrix4d::Zero();
  k(1, 2) = -lambda_over_hbar;
  k(3, 0) = -lambda_over_hbar;
  return k;
}

Eigen::Matrix4d transfer_matrix(const CouplingGenerator& generator, double t) {
  return linalg::expm(Eigen::MatrixXd(generator.matrix() * t));
}

Eigen::Matrix4d transfer_matrix_nilpotent(const CouplingGenerator& generator, double t) {
  return Eigen::Matrix4d::Identity() + generator.matrix() * t;
}

GaussianTwoModeState evolve(const GaussianTwoModeState& state,
                            const CouplingGenerator& generator, double t) {
  state.require_physical();
  const Eigen::Matrix4d s = transfer_matrix(generator, t);
  return GaussianTwoModeState(s * state.sigma() * s.transpose(), s * state.displacement());
}

GaussianTwoModeState partial_transpose(const GaussianTwoModeState& state, Subsystem subsystem) {
  const Eigen::Matrix4d p = momentum_flip(subsystem);
  return GaussianTwoModeState(p * state.sigma() * p, p * state.displacement());
}

std::array<double, 2> symplectic_eigenvalues(const Covariance& sigma) {
  require_symmetric(sigma);
  const Eigen::Matrix4d omega = SymplecticForm::matrix();
  const std::complex<double> i(0.0, 1.0);
  std::array<double, 4> moduli{};

  if (sigma.topRightCorner<2, 2>().isZero(0.0)) {
    // Uncorrelated modes: nu = sqrt(det) of each 2x2 block.
    const double a = std::sqrt(sigma.topLeftCorner<2, 2>().determinant());
    const double b = std::sqrt(sigma.bottomRightCorner<2, 2>().determinant());
    return {std::min(a, b), std::max(a, b)};
  }

  const Eigen::LLT<Covariance> llt(sigma);
  if (llt.info() == Eigen::Success) {
    // sigma = L L^T makes i Omega sigma similar to the Hermitian L^T (i Omega) L.
    const Eigen::Matrix4d l = llt.matrixL();
    const Eigen::Matrix4cd hermitian = i * (l.transpose() * omega * l).cast<std::complex<double>>();
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> eig(hermitian, Eigen::EigenvaluesOnly);
    for (int k = 0; k < 4; ++k) moduli[k] = std::abs(eig.eigenvalues()(k));
  } else {
    const Eigen::Matrix4cd m = i * (omega * sigma).cast<std::complex<double>>();
    const Eigen::ComplexEigenSolver<Eigen::Matrix4cd> eig(m, false);
    for (int k = 0; k < 4; ++k) moduli[k] = std::abs(eig.eigenvalues()(k));
  }
  std::sort(moduli.begin(), moduli.end());
  // Each value appears twice (+nu and -nu).
  return {0.5 * (moduli[0] + moduli[1]), 0.5 * (moduli[2] + moduli[3])};
}

double log_negativity_gaussian(const GaussianTwoModeState& state, Subsystem subsystem) {
  state.require_physical();
  const double nu_min = symplectic_eigenvalues(partial_transpose(state, subsystem).sigma())[0];
  return std::max(0.0, -std::log2(nu_min));
}

double entangling_rate_gaussian(const ScenarioConfig& scenario, double dx) {
  const DimensionlessScenario dim = to_dimensionless(scenario);
  const double delta_X = dim.delta_X(dx);
  return 2.0 * dim.lambda_over_hbar * delta_X * delta_X / std::log(2.0);
}

double nu_min_squared_closed_form(double delta_X, double delta_P, double eta) {
  const double a = delta_X * delta_X * delta_P * delta_P;
  const double denom = eta + std::sqrt(a + eta * eta);
  return 4.0 * a * a / (denom * denom);
}

}  // namespace cvgrav::gaussian
