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


#include <cmath>

#include <gtest/gtest.h>

#include "cvgrav/error.hpp"
#include "cvgrav/gaussian_states.hpp"
#include "cvgrav/sensing_protocols.hpp"
#include "oracles.hpp"

namespace {

using namespace cvgrav::gaussian;

GaussianTwoModeState evolved_product(double dX, double dP, double eta) {
  const CouplingGenerator gen{eta / (dX * dX)};
  return evolve(GaussianTwoModeState::product(dX, dP), gen, 1.0);
}

double printed_nu_min_sq(double dX, double dP, double eta) {
  const double a = dX * dX * dP * dP;
  return 4.0 * a + 8.0 * eta * (eta - std::sqrt(a + eta * eta));
}

TEST(GaussianState, VacuumIsIdentity) {
  EXPECT_EQ(GaussianTwoModeState::vacuum().sigma(), Covariance::Identity());
  EXPECT_TRUE(GaussianTwoModeState::vacuum().is_physical());
}

TEST(GaussianState, RejectsAsymmetricCovariance) {
  Covariance s = Covariance::Identity();
  s(0, 1) = 1e-6;
  EXPECT_THROW(GaussianTwoModeState{s}, cvgrav::InvalidInput);
}

TEST(GaussianState, UncertaintyViolationIsUnphysical) {
  const auto s = GaussianTwoModeState::product(0.5, 0.5);
  EXPECT_FALSE(s.is_physical());
  EXPECT_THROW(s.require_physical(), cvgrav::PhysicalityError);
  EXPECT_THROW(evolve(s, CouplingGenerator{1.0}, 0.1), cvgrav::PhysicalityError);
}

TEST(Evolution, ZeroCouplingLeavesStateUnchanged) {
  const auto s = GaussianTwoModeState::product(0.9, 0.7);
  EXPECT_EQ(evolve(s, CouplingGenerator{0.0}, 5.0).sigma(), s.sigma());
}

TEST(Evolution, VacuumAtTheta0p1) {
  const auto s = evolve(GaussianTwoModeState::vacuum(), CouplingGenerator{0.1}, 1.0).sigma();
  EXPECT_NEAR(s(0, 3), -0.1, 1e-15);
  EXPECT_NEAR(s(1, 1), 1.01, 1e-15);
  EXPECT_NEAR(s(3, 3), 1.01, 1e-15);
  EXPECT_NEAR(s(0, 0), 1.0, 1e-15);
}

TEST(Evolution, GeneratorIsNilpotentAndSeriesTerminates) {
  const CouplingGenerator gen{2.5};
  EXPECT_EQ((gen.matrix() * gen.matrix()).norm(), 0.0);
  for (double t : {1e-3, 0.4, 7.0}) {
    EXPECT_LT((transfer_matrix(gen, t) - transfer_matrix_nilpotent(gen, t)).norm(), 1e-13);
    EXPECT_LT((transfer_matrix(gen, t) - oracle::coupling_map(2.5 * t)).norm(), 1e-13);
  }
}

TEST(Evolution, ReversibleAndSymplectic) {
  auto g = oracle::rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    const double dX = oracle::uniform(g, 0.3, 3.0);
    const double dP = oracle::uniform(g, 0.5 / dX, 2.0 / dX);
    const double lam = oracle::uniform(g, 0.0, 4.0);
    const double t = oracle::uniform(g, 0.0, 3.0);
    const auto s0 = GaussianTwoModeState::product(dX, dP);
    const auto s1 = evolve(s0, CouplingGenerator{lam}, t);
    const auto back = evolve(s1, CouplingGenerator{-lam}, t);
    EXPECT_LT((back.sigma() - s0.sigma()).norm() / s0.sigma().norm(), 1e-12);
    EXPECT_TRUE(s1.is_physical());
    EXPECT_NEAR(s1.sigma().determinant() / s0.sigma().determinant(), 1.0, 1e-8);
    const Eigen::Matrix4d m = transfer_matrix(CouplingGenerator{lam}, t);
    EXPECT_LT((m * oracle::omega() * m.transpose() - oracle::omega()).norm(), 1e-12);
  }
}

TEST(PartialTranspose, FlipsMomentumOfChosenMode) {
  const auto s = evolved_product(0.8, 0.9, 0.3);
  const auto tb = partial_transpose(s, Subsystem::B).sigma();
  const auto ta = partial_transpose(s, Subsystem::A).sigma();
  for (int i = 0; i < 4; ++i) {
    EXPECT_EQ(tb(i, i), s.sigma()(i, i));
    EXPECT_EQ(ta(i, i), s.sigma()(i, i));
  }
  EXPECT_EQ(tb(1, 3), -s.sigma()(1, 3));
  EXPECT_EQ(tb(0, 3), -s.sigma()(0, 3));
  EXPECT_EQ(ta(1, 2), -s.sigma()(1, 2));
  EXPECT_EQ(partial_transpose(partial_transpose(s)).sigma(), s.sigma());
  EXPECT_NEAR(log_negativity_gaussian(s, Subsystem::A), log_negativity_gaussian(s, Subsystem::B),
              1e-13);
}

TEST(SymplecticEigenvalues, KnownCases) {
  auto id = symplectic_eigenvalues(Covariance::Identity());
  EXPECT_NEAR(id[0], 1.0, 1e-14);
  EXPECT_NEAR(id[1], 1.0, 1e-14);
  const double r = 1.3;
  Covariance sq = Eigen::Vector4d(std::exp(2 * r), std::exp(-2 * r), 1.0, 1.0).asDiagonal();
  auto nu = symplectic_eigenvalues(sq);
  EXPECT_NEAR(nu[0], 1.0, 1e-12);
  EXPECT_NEAR(nu[1], 1.0, 1e-12);
  Covariance thermal = 3.0 * Covariance::Identity();
  thermal(2, 2) = thermal(3, 3) = 5.0;
  nu = symplectic_eigenvalues(thermal);
  EXPECT_NEAR(nu[0], 3.0, 1e-12);
  EXPECT_NEAR(nu[1], 5.0, 1e-12);
}

TEST(SymplecticEigenvalues, MatchDirectEigenvaluesOfIOmegaSigma) {
  auto g = oracle::rng(22);
  for (int trial = 0; trial < 100; ++trial) {
    const double dX = oracle::uniform(g, 0.3, 3.0);
    const double dP = oracle::uniform(g, 0.5 / dX, 3.0 / dX);
    const double eta = oracle::uniform(g, 0.0, 2.0);
    const auto s = partial_transpose(evolved_product(dX, dP, eta)).sigma();
    const auto got = symplectic_eigenvalues(s);
    const auto ref = oracle::symplectic_eigenvalues(s);
    EXPECT_LT(oracle::rel(got[0], ref[0]), 1e-9);
    EXPECT_LT(oracle::rel(got[1], ref[1]), 1e-9);
  }
}

TEST(NuMin, ClosedFormMatchesPrintedExpressionAndNumerics) {
  auto g = oracle::rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const double dX = oracle::uniform(g, 0.3, 3.0);
    const double dP = oracle::uniform(g, 0.5 / dX, 3.0 / dX);
    const double eta = oracle::uniform(g, 0.0, 2.0);
    const double closed = nu_min_squared_closed_form(dX, dP, eta);
    EXPECT_LT(oracle::rel(closed, printed_nu_min_sq(dX, dP, eta)), 1e-9);
    const double nu = oracle::symplectic_eigenvalues(
        partial_transpose(evolved_product(dX, dP, eta)).sigma())[0];
    EXPECT_LT(oracle::rel(closed, nu * nu), 1e-9);
  }
}

TEST(LogNegativity, VacuumAndProductStatesCarryNone) {
  EXPECT_EQ(log_negativity_gaussian(GaussianTwoModeState::vacuum()), 0.0);
  EXPECT_EQ(log_negativity_gaussian(GaussianTwoModeState::product(2.0, 1.0)), 0.0);
}

TEST(LogNegativity, SmallEtaLinearRegime) {
  const double en = log_negativity_gaussian(evolved_product(M_SQRT1_2, M_SQRT1_2, 0.01));
  EXPECT_NEAR(en, 0.028853, 1e-4);
  EXPECT_NEAR(en, 2.0 * 0.01 / std::log(2.0), 1e-4);
}

TEST(LogNegativity, PureStatesEntangleForEveryPositiveTime) {
  auto g = oracle::rng(24);
  for (int trial = 0; trial < 100; ++trial) {
    const double dX = oracle::uniform(g, 0.2, 4.0);
    const double eta = std::exp(oracle::uniform(g, std::log(1e-6), std::log(10.0)));
    EXPECT_GT(log_negativity_gaussian(evolved_product(dX, 0.5 / dX, eta)), 0.0);
  }
}

TEST(LogNegativity, ThermalThresholdAtThreeQuarters) {
  EXPECT_EQ(log_negativity_gaussian(evolved_product(1.0, 1.0, 0.75 - 1e-6)), 0.0);
  EXPECT_GT(log_negativity_gaussian(evolved_product(1.0, 1.0, 0.75 + 1e-6)), 0.0);
  EXPECT_NEAR(nu_min_squared_closed_form(1.0, 1.0, 0.75), 1.0, 1e-15);
}

TEST(LogNegativity, NonDecreasingInEta) {
  double prev = 0.0;
  for (int k = 0; k <= 200; ++k) {
    const double en = log_negativity_gaussian(evolved_product(0.9, 0.6, 0.01 * k));
    EXPECT_GE(en, prev - 1e-14);
    prev = en;
  }
}

cvgrav::ScenarioConfig default_scenario() { return cvgrav::ScenarioConfig{}; }

TEST(Rate, ZeroMassesGiveZeroRate) {
  auto s = default_scenario();
  s.M_A = 0.0;
  s.M_B = 0.0;
  EXPECT_EQ(entangling_rate_gaussian(s, 5e-8), 0.0);
}

TEST(Rate, InverseCubeInSeparation) {
  auto s = default_scenario();
  const double r1 = entangling_rate_gaussian(s, 5e-8);
  s.D *= 2.0;
  EXPECT_DOUBLE_EQ(entangling_rate_gaussian(s, 5e-8), r1 / 8.0);
}

TEST(Rate, MatchesDirectFormula) {
  const auto s = default_scenario();
  const double dx = 5e-8;
  const double direct = 4.0 * s.G * s.M_A * s.M_B * dx * dx / (s.hbar * std::pow(s.D, 3)) /
                        std::log(2.0);
  EXPECT_LT(oracle::rel(entangling_rate_gaussian(s, dx), direct), 1e-13);
}

TEST(Rate, InvariantUnderChoiceOfLengthScale) {
  auto s = default_scenario();
  const double r1 = entangling_rate_gaussian(s, 5e-8);
  for (double f : {2.0, 0.5, 1024.0}) {
    auto t = s;
    t.x0 = s.x0 * f;
    EXPECT_EQ(entangling_rate_gaussian(t, 5e-8), r1);
  }
  auto g = oracle::rng(25);
  for (int trial = 0; trial < 20; ++trial) {
    auto t = s;
    t.x0 = s.x0 * oracle::uniform(g, 0.01, 100.0);
    EXPECT_LT(oracle::rel(entangling_rate_gaussian(t, 5e-8), r1), 1e-14);
  }
}

TEST(Rate, EqualsFiniteDifferenceSlopeOfLogNegativity) {
  const auto s = default_scenario();
  const double dx = 5e-8;
  const auto dim = cvgrav::to_dimensionless(s);
  const double dX = dim.delta_X(dx);
  const double t = 1e-4 / (dX * dX * dim.lambda_over_hbar);
  const auto state = evolve(GaussianTwoModeState::product(dX, 0.5 / dX),
                            CouplingGenerator{dim.lambda_over_hbar}, t);
  EXPECT_LT(oracle::rel(log_negativity_gaussian(state) / t, entangling_rate_gaussian(s, dx)), 1e-3);
}

TEST(Rate, GaussianEqualsNonGaussianWhenSpreadIsHalfSeparation) {
  auto g = oracle::rng(26);
  for (int trial = 0; trial < 20; ++trial) {
    cvgrav::ScenarioConfig s;
    s.M_A = std::exp(oracle::uniform(g, std::log(1e-16), std::log(1e-12)));
    s.M_B = std::exp(oracle::uniform(g, std::log(1e-16), std::log(1e-12)));
    s.D = std::exp(oracle::uniform(g, std::log(1e-5), std::log(1e-3)));
    s.d = s.D * oracle::uniform(g, 1e-4, 1e-2);
    EXPECT_LT(oracle::rel(entangling_rate_gaussian(s, s.d / 2.0),
                          cvgrav::sensing::entangling_rate_nongaussian(s)),
              1e-12);
  }
}

TEST(Scenario, Validation) {
  auto s = default_scenario();
  s.D = 0.0;
  EXPECT_THROW(entangling_rate_gaussian(s, 1e-8), cvgrav::InvalidInput);
  s = default_scenario();
  s.M_A = -1.0;
  EXPECT_THROW(entangling_rate_gaussian(s, 1e-8), cvgrav::InvalidInput);
  s = default_scenario();
  s.d = s.D;
  EXPECT_THROW(entangling_rate_gaussian(s, 1e-8), cvgrav::InvalidInput);
  s = default_scenario();
  s.t_grid = {1.0, 0.5};
  EXPECT_THROW(s.validate(), cvgrav::InvalidInput);
}

}  // namespace
