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
#include "cvgrav/fock_space.hpp"
#include "cvgrav/linalg.hpp"
#include "oracles.hpp"

namespace {

using namespace cvgrav::fock;
using oracle::Complex;

constexpr Complex kI{0.0, 1.0};

TEST(Cutoffs, Rules) {
  EXPECT_EQ(guard_band(40), 4);
  EXPECT_EQ(guard_band(41), 5);
  EXPECT_EQ(coherent_cutoff(2.5), static_cast<int>(std::ceil(6.25 + 20.0 + 16.0)));
  EXPECT_EQ(squeeze_cutoff(0.0), 8);
  EXPECT_EQ(squeeze_cutoff(1.0), static_cast<int>(std::ceil(8.0 * std::exp(2.0))));
}

TEST(Operators, LadderAndQuadratures) {
  const int n = 10;
  const auto a = annihilation(n).entries();
  for (int k = 1; k < n; ++k) EXPECT_DOUBLE_EQ(a(k - 1, k).real(), std::sqrt(double(k)));
  EXPECT_EQ((creation(n).entries() - a.adjoint()).norm(), 0.0);
  const Eigen::MatrixXcd comm =
      position(n).entries() * momentum(n).entries() - momentum(n).entries() * position(n).entries();
  for (int k = 0; k + 1 < n; ++k) EXPECT_NEAR(std::abs(comm(k, k) - kI), 0.0, 1e-14);
}

TEST(Coherent, MatchesIndependentAmplitudes) {
  for (Complex alpha : {Complex(0.0, 0.0), Complex(1.5, 0.0), Complex(-0.7, 2.1)}) {
    const int n = coherent_cutoff(std::abs(alpha));
    const auto psi = coherent(alpha, n);
    const Eigen::VectorXcd ref = oracle::coherent_vector(alpha, n);
    EXPECT_LT((psi.amplitudes() - ref / ref.norm()).norm(), 1e-13);
    EXPECT_LT(psi.tail_weight(), 1e-12);
  }
}

TEST(Coherent, CutoffBelowRuleIsAGuardViolation) {
  EXPECT_THROW(coherent(3.0, 10), cvgrav::GuardViolation);
  EXPECT_THROW(coherent(1.0, 0), cvgrav::InvalidInput);
}

TEST(Coherent, OverlapAndMean) {
  const int n = coherent_cutoff(1.5);
  const Complex ov = inner_product(coherent(1.5, n), coherent(-1.5, n));
  EXPECT_NEAR(std::abs(ov), 0.011109, 1e-6);
  EXPECT_NEAR(std::norm(ov), std::exp(-9.0), 1e-12);
  const Complex alpha(0.8, -0.4);
  const auto m = quadrature_moments(coherent(alpha, coherent_cutoff(std::abs(alpha))));
  EXPECT_NEAR(m.mean(0), std::sqrt(2.0) * alpha.real(), 1e-12);
  EXPECT_NEAR(m.mean(1), std::sqrt(2.0) * alpha.imag(), 1e-12);
  EXPECT_LT((m.sigma - Eigen::Matrix2d::Identity()).norm(), 1e-11);
}

TEST(Displacement, IdentityAtZero) {
  EXPECT_LT((displacement_matrix(0.0, 20).entries() - Eigen::MatrixXcd::Identity(20, 20)).norm(),
            1e-15);
}

TEST(Displacement, ActsOnVacuumAsCoherentState) {
  for (Complex g : {Complex(1.0, 0.0), Complex(0.0, 0.6), Complex(-0.9, 1.1)}) {
    const int n = coherent_cutoff(std::abs(g)) + 20;
    const Eigen::VectorXcd out = displacement_matrix(g, n) * vacuum(n);
    EXPECT_LT((out - oracle::coherent_vector(g, n)).norm(), 1e-10);
  }
}

TEST(Displacement, CompositionRuleInBulk) {
  const Complex a(0.4, 0.3), b(-0.2, 0.5);
  const int n = 60;
  const auto ab = displacement_matrix(a, n) * displacement_matrix(b, n);
  const Complex phase = std::exp(Complex(0.0, (a * std::conj(b)).imag()));
  const Eigen::MatrixXcd ref = phase * displacement_matrix(a + b, n).entries();
  const int bulk = n / 2;
  EXPECT_LT((ab.entries() - ref).topLeftCorner(bulk, bulk).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(Displacement, BulkUnitarity) {
  EXPECT_LT(displacement_matrix(Complex(1.2, -0.3), 60).bulk_unitarity_error(), 1e-8);
  EXPECT_LT(squeeze_matrix(Complex(0.8, 0.0), 80).bulk_unitarity_error(), 1e-8);
}

TEST(Squeeze, IdentityAtZeroAndVariances) {
  EXPECT_LT((squeeze_matrix(0.0, 12).entries() - Eigen::MatrixXcd::Identity(12, 12)).norm(),
            1e-15);
  const int n = 2 * squeeze_cutoff(1.0);
  const auto m = quadrature_moments(squeezed_vacuum(std::polar(1.0, M_PI), n));
  EXPECT_NEAR(m.delta_X() * m.delta_X(), std::exp(2.0) / 2.0, 1e-6);
  EXPECT_NEAR(m.sigma(1, 1), std::exp(-2.0), 1e-6);
  EXPECT_NEAR(m.sigma.determinant(), 1.0, 1e-8);
  const auto m0 = quadrature_moments(squeezed_vacuum(1.0, n));
  EXPECT_NEAR(m0.sigma(0, 0), std::exp(-2.0), 1e-6);
}

TEST(Squeeze, CutoffBelowRuleIsAGuardViolation) {
  EXPECT_THROW(squeeze_matrix(2.0, 100), cvgrav::GuardViolation);
}

TEST(Cat, NormalizationAndParity) {
  const double alpha = 2.5;
  const int n = coherent_cutoff(alpha);
  for (double phi : {0.0, M_PI / 3.0, M_PI}) {
    const Eigen::VectorXcd ref = cat_normalization(alpha, phi) *
                                 (oracle::coherent_vector(alpha, n) +
                                  std::polar(1.0, phi) * oracle::coherent_vector(-alpha, n));
    EXPECT_NEAR(ref.norm(), 1.0, 1e-12);
    EXPECT_LT((cat_state(alpha, phi, n).amplitudes() - ref).norm(), 1e-12);
  }
  const auto even = cat_state(alpha, 0.0, n);
  for (int k = 1; k < n; k += 2) EXPECT_EQ(std::abs(even[k]), 0.0);
}

TEST(Cat, TinyAmplitudeApproachesVacuum) {
  const auto psi = cat_state(1e-4, 0.0, coherent_cutoff(1e-4));
  EXPECT_NEAR(std::norm(psi[0]), 1.0, 1e-8);
}

TEST(Cat, PositionSpreadMatchesExactMoment) {
  for (double alpha : {1.5, 2.5}) {
    const auto m = quadrature_moments(cat_state(alpha, 0.0, coherent_cutoff(alpha)));
    const double var = alpha * alpha * (1.0 + std::tanh(alpha * alpha)) + 0.5;
    EXPECT_NEAR(m.delta_X() * m.delta_X(), var, 1e-10);
    EXPECT_LT(std::abs(m.delta_X() / (std::sqrt(2.0) * alpha) - 1.0), 1.0 / (8.0 * alpha * alpha));
  }
}

TEST(SqueezedCat, ZeroSqueezingIsTheCat) {
  const int n = coherent_cutoff(2.0);
  EXPECT_LT((squeezed_cat(2.0, 0.0, n).amplitudes() - cat_state(2.0, 0.0, n).amplitudes()).norm(),
            1e-10);
}

TEST(SqueezedCat, NumericNormMatchesClosedForm) {
  const Complex xi = std::polar(0.5, M_PI / 3.0);
  const double alpha = 1.2;
  const int n = 90;
  const auto psi = squeezed_cat(alpha, xi, n);
  EXPECT_LT(psi.guard_weight(), 1e-10);
  EXPECT_NEAR(psi.raw_norm() / squeezed_cat_normalization(alpha, xi), 1.0, 1e-9);
  const Eigen::VectorXcd s0 = squeezed_vacuum(xi, n).amplitudes();
  const Complex branch = s0.dot(displacement_matrix(-2.0 * alpha, n) * FockVector(s0));
  const double v2 = std::norm(std::cosh(0.5) + std::sinh(0.5) * std::polar(1.0, M_PI / 3.0));
  EXPECT_NEAR(std::abs(branch), std::exp(-2.0 * alpha * alpha * v2), 1e-9);
}

TEST(SqueezedCat, AutoCutoffMeetsGuard) {
  const auto psi = squeezed_cat_auto(1.5, Complex(-1.0, 0.0));
  EXPECT_LT(psi.guard_weight(), 1e-10);
  EXPECT_THROW(squeezed_cat_auto(1.5, Complex(3.0, 0.0), 64), cvgrav::GuardViolation);
}

TEST(Hermite, MatchesIndependentPolynomials) {
  for (double x : {-5.0, -1.3, 0.0, 0.7, 4.2}) {
    const Eigen::VectorXd phi = hermite_functions(31, x);
    for (int n = 0; n <= 30; ++n)
      EXPECT_NEAR(phi(n), oracle::hermite_function(n, x), 1e-12) << "n=" << n << " x=" << x;
  }
  const Eigen::VectorXd far = hermite_functions(200, 40.0);
  EXPECT_TRUE(far.allFinite());
}

TEST(Hermite, Orthonormal) {
  const double h = 0.01;
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(20, 20);
  for (double x = -12.0; x <= 12.0; x += h) {
    const Eigen::VectorXd phi = hermite_functions(20, x);
    gram += h * phi * phi.transpose();
  }
  EXPECT_LT((gram - Eigen::MatrixXd::Identity(20, 20)).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Wavefunctions, CoherentStateInPositionAndMomentum) {
  const Complex alpha(0.9, -0.5);
  const auto psi = coherent(alpha, coherent_cutoff(std::abs(alpha)) + 10);
  const double x0 = std::sqrt(2.0) * alpha.real(), p0 = std::sqrt(2.0) * alpha.imag();
  for (double x : {-1.0, 0.3, 2.0}) {
    const double dens = std::exp(-(x - x0) * (x - x0)) / std::sqrt(M_PI);
    EXPECT_NEAR(std::norm(position_wavefunction(psi, x)), dens, 1e-12);
    const double pdens = std::exp(-(x - p0) * (x - p0)) / std::sqrt(M_PI);
    EXPECT_NEAR(std::norm(momentum_wavefunction(psi, x)), pdens, 1e-12);
  }
}

TEST(Bipartite, ValidationOfMixedStates) {
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Identity(4, 4) / 4.0;
  EXPECT_NO_THROW(BipartiteFockState::mixed(rho, 2, 2));
  EXPECT_THROW(BipartiteFockState::mixed(rho, 2, 3), cvgrav::InvalidInput);
  Eigen::MatrixXcd bad = rho;
  bad(0, 1) = 0.1;
  EXPECT_THROW(BipartiteFockState::mixed(bad, 2, 2), cvgrav::PhysicalityError);
  EXPECT_THROW(BipartiteFockState::mixed(2.0 * rho, 2, 2), cvgrav::PhysicalityError);
  Eigen::MatrixXcd neg = Eigen::Vector4cd(0.6, 0.6, 0.0, -0.2).asDiagonal();
  EXPECT_THROW(BipartiteFockState::mixed(neg, 2, 2), cvgrav::PhysicalityError);
  EXPECT_THROW(BipartiteFockState::mixed(rho, 2, 2).amplitudes(), cvgrav::InvalidInput);
}

TEST(LogNegativity, ProductStateHasNone) {
  const auto s = BipartiteFockState::product(coherent(0.5, 30), cat_state(1.0, 0.0, 30));
  EXPECT_LT(log_negativity_fock(s), 1e-10);
}

TEST(LogNegativity, BellStateIsOneEbit) {
  Eigen::MatrixXcd psi = Eigen::MatrixXcd::Zero(2, 2);
  psi(0, 0) = psi(1, 1) = 1.0;
  EXPECT_NEAR(log_negativity_fock(BipartiteFockState::pure(psi)), 1.0, 1e-12);
  const auto mixed = BipartiteFockState::mixed(BipartiteFockState::pure(psi).density(), 2, 2);
  EXPECT_NEAR(log_negativity_fock(mixed), 1.0, 1e-12);
}

TEST(LogNegativity, MatchesQubitOracleForRandomStates) {
  auto g = oracle::rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    Eigen::Vector4cd v;
    for (int i = 0; i < 4; ++i)
      v(i) = {oracle::uniform(g, -1.0, 1.0), oracle::uniform(g, -1.0, 1.0)};
    v.normalize();
    Eigen::MatrixXcd psi(2, 2);
    psi << v(0), v(1), v(2), v(3);
    const Eigen::Matrix4cd rho = v * v.adjoint();
    EXPECT_NEAR(log_negativity_fock(BipartiteFockState::pure(psi)),
                oracle::qubit_log_negativity(rho), 1e-12);
    const Eigen::Matrix4cd mix = 0.7 * rho + 0.3 * Eigen::Matrix4cd::Identity() / 4.0;
    EXPECT_NEAR(log_negativity_fock(BipartiteFockState::mixed(mix, 2, 2)),
                std::max(0.0, oracle::qubit_log_negativity(mix)), 1e-12);
  }
}

TEST(LogNegativity, CatQubitEncodingReproducesPhaseFormula) {
  // Orthogonal coherent branches carry the qubit; branch phases set E_N.
  const double a = 4.0;
  const int n = coherent_cutoff(a);
  const Eigen::VectorXcd L = oracle::coherent_vector(-a, n), R = oracle::coherent_vector(a, n);
  for (double dphi : {0.3, M_PI / 2.0, M_PI, 2.5}) {
    const Eigen::MatrixXcd psi = 0.5 * (L * L.transpose() + R * R.transpose() + L * R.transpose() +
                                        std::polar(1.0, dphi) * R * L.transpose());
    EXPECT_NEAR(log_negativity_fock(BipartiteFockState::pure(psi)),
                std::log2(1.0 + std::abs(std::sin(dphi / 2.0))), 1e-9);
  }
}

TEST(Bilinear, ZeroCouplingIsIdentity) {
  const int n = 40;
  const auto a = cat_state(1.0, 0.0, n), b = coherent(0.3, n);
  const auto out = evolve_bilinear(a, b, 0.0);
  EXPECT_LT((out.amplitudes() - BipartiteFockState::product(a, b).amplitudes()).norm(), 1e-13);
}

TEST(Bilinear, MatchesDenseExponentialOfTruncatedGenerator) {
  const int n = 20;
  const Eigen::MatrixXcd x = position(n).entries();
  Eigen::MatrixXcd xx(n * n, n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) xx(i * n + j, k * n + l) = x(i, k) * x(j, l);
  const double theta = 0.37;
  const Eigen::MatrixXcd u = cvgrav::linalg::expm(Eigen::MatrixXcd(-kI * theta * xx));
  Eigen::VectorXcd va = Eigen::VectorXcd::Zero(n), vb = Eigen::VectorXcd::Zero(n);
  va(0) = 0.8;
  va(1) = Complex(0.0, 0.6);
  vb(0) = 1.0;
  Eigen::VectorXcd in(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) in(i * n + j) = va(i) * vb(j);
  const Eigen::VectorXcd ref = u * in;
  const auto out = evolve_bilinear(FockVector(va), FockVector(vb), theta).amplitudes();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) EXPECT_NEAR(std::abs(out(i, j) - ref(i * n + j)), 0.0, 1e-12);
}

TEST(Bilinear, PositionEigenvectorKicksPartnerMomentum) {
  const int n = 40;
  const auto spec = position_spectrum(n);
  const int k = n / 2 + 3;
  const double xk = spec.values(k);
  const FockVector a(spec.vectors.col(k).cast<Complex>());
  const double theta = 0.3;
  const auto out = evolve_bilinear(a, vacuum(n), theta).amplitudes();
  const Eigen::VectorXcd b = spec.vectors.col(k).cast<Complex>().adjoint() * out;
  const Eigen::VectorXcd ref = oracle::coherent_vector(Complex(0.0, -theta * xk / std::sqrt(2.0)), n);
  EXPECT_GT(std::norm(b.normalized().dot(ref.normalized())), 1.0 - 1e-10);
}

TEST(Bilinear, GuardRejectsStatesNearTruncationEdge) {
  EXPECT_THROW(evolve_bilinear(coherent(2.5, 44), vacuum(44), 0.1), cvgrav::GuardViolation);
}

TEST(Bilinear, MixedPathAgreesWithPurePath) {
  const int n = 30;
  const auto a = coherent(0.4, n), b = cat_state(0.5, 0.0, n);
  const auto pure = evolve_bilinear(a, b, 0.2);
  const auto mixed =
      evolve_bilinear(BipartiteFockState::mixed(BipartiteFockState::product(a, b).density(), n, n),
                      0.2);
  EXPECT_LT((pure.density() - mixed.density()).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_NEAR(mixed.density().trace().real(), 1.0, 1e-12);
  EXPECT_LT((mixed.density() - mixed.density().adjoint()).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_NEAR(log_negativity_fock(pure), log_negativity_fock(mixed), 1e-10);
}

TEST(Bilinear, VacuaMatchGaussianTrackAtSmallCoupling) {
  const double theta = 0.02;
  const double en = log_negativity_fock(evolve_bilinear(vacuum(20), vacuum(20), theta));
  const double nu2 = 0.25 * 4.0 + 8.0 * (theta / 2.0) * (theta / 2.0 - std::sqrt(0.25 + theta * theta / 4.0));
  EXPECT_NEAR(en, -0.5 * std::log2(nu2), 1e-8);
}

TEST(Bilinear, SmallCouplingMatchesFirstOrderPerturbationTheory) {
  // For pure product inputs E_N ~ 2 theta sd(X_A) sd(X_B) / ln 2 as theta -> 0.
  const int n = 40;
  const double theta = 1e-3;
  for (double alpha : {1.0, 1.5}) {
    const auto cat = cat_state(alpha, 0.0, n);
    const double sd = quadrature_moments(cat).delta_X();
    const double en = log_negativity_fock(evolve_bilinear(cat, cat, theta));
    EXPECT_LT(oracle::rel(en, 2.0 * theta * sd * sd / std::log(2.0)), 2e-2) << alpha;
  }
}

TEST(Bilinear, CutoffDoublingIsConverged) {
  const double e20 = log_negativity_fock(evolve_bilinear(vacuum(20), vacuum(20), 0.1));
  const double e40 = log_negativity_fock(evolve_bilinear(vacuum(40), vacuum(40), 0.1));
  EXPECT_LT(std::abs(e20 - e40), 1e-6);
}

}  // namespace
