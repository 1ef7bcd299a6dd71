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
#include "cvgrav/gaussian_states.hpp"
#include "cvgrav/sensing_protocols.hpp"
#include "oracles.hpp"

namespace {

using namespace cvgrav::sensing;
namespace fock = cvgrav::fock;
using cvgrav::ScenarioConfig;
using oracle::Complex;

DisplacementParam ib(double b) { return DisplacementParam::imaginary(b); }

TEST(Potential, LeadingTermAndScaling) {
  const ScenarioConfig s;
  const auto e = expand_potential(s);
  EXPECT_DOUBLE_EQ(e.c0, -s.G * s.M_A * s.M_B / s.D);
  EXPECT_EQ(e.lambda, e.c2_cross);
  EXPECT_LT(oracle::rel(e.lambda, 2.0 * s.G * s.M_A * s.M_B * s.x0 * s.x0 / std::pow(s.D, 3)), 1e-15);
  auto t = s;
  t.x0 *= 2.0;
  EXPECT_EQ(expand_potential(t).lambda, 4.0 * e.lambda);
  EXPECT_TRUE(e.valid);
}

TEST(Potential, CoefficientsMatchFiniteDifferences) {
  ScenarioConfig s;
  s.x0 = 1e-6;
  const auto e = expand_potential(s);
  const double h = 1e-1;
  auto along_a = [&](double x) { return potential(s, x, 0.0); };
  auto along_ab = [&](double x) { return potential(s, x, x); };
  auto along_anti = [&](double x) { return potential(s, x, -x); };
  EXPECT_LT(oracle::rel(oracle::derivative(along_a, 0.0, h), e.c1), 1e-8);
  EXPECT_LT(oracle::rel(0.5 * oracle::second_derivative(along_a, 0.0, h), e.c2_local), 1e-8);
  // Along X_A = X_B = x the quadratic part is (2 c2_local + c2_cross) x^2.
  EXPECT_LT(oracle::rel(0.5 * oracle::second_derivative(along_ab, 0.0, h), 2 * e.c2_local + e.c2_cross),
            1e-8);
  EXPECT_LT(oracle::rel(0.5 * oracle::second_derivative(along_anti, 0.0, h),
                        2 * e.c2_local - e.c2_cross),
            1e-8);
  EXPECT_DOUBLE_EQ(potential(s, 0.0, 0.0), e.c0);
}

TEST(Potential, RejectsBadSeparation) {
  ScenarioConfig s;
  s.D = 0.0;
  EXPECT_THROW(expand_potential(s), cvgrav::InvalidInput);
  s.D = -1.0;
  EXPECT_THROW(expand_potential(s), cvgrav::InvalidInput);
}

TEST(Phases, ZeroTimeAndIdentity) {
  const ScenarioConfig s;
  const auto p0 = phase_set(s, 0.0);
  EXPECT_EQ(p0.phi_LL, 0.0);
  EXPECT_EQ(p0.phi_LR, 0.0);
  EXPECT_EQ(p0.phi_RL, 0.0);
  EXPECT_EQ(p0.delta_phi, 0.0);
  const double t = 3.7;
  const auto p = phase_set(s, t);
  const double k = s.G * s.M_A * s.M_B * t / s.hbar;
  EXPECT_EQ(p.phi_LL, p.phi_RR);
  EXPECT_LT(oracle::rel(p.phi_LL, k / s.D), 1e-15);
  EXPECT_LT(oracle::rel(p.phi_RL, k / (s.D - s.d)), 1e-15);
  EXPECT_LT(oracle::rel(p.phi_LR, k / (s.D + s.d)), 1e-15);
  EXPECT_EQ(p.delta_phi, p.phi_RL + p.phi_LR - 2.0 * p.phi_LL);
  const double exact = k * (1.0 / (s.D - s.d) + 1.0 / (s.D + s.d) - 2.0 / s.D);
  EXPECT_LT(oracle::rel(p.delta_phi, exact), 1e-6);
}

TEST(Phases, SmallSeparationApproximation) {
  ScenarioConfig s;
  s.d = 0.01 * s.D;
  const auto p = phase_set(s, 1.0);
  EXPECT_LE(p.relative_gap, 2.0 * 1e-4);
  EXPECT_LT(oracle::rel(p.delta_phi_approx,
                        2.0 * s.G * s.M_A * s.M_B * s.d * s.d / (s.hbar * std::pow(s.D, 3))),
            1e-15);
  EXPECT_FALSE(p.valid);
  s.d = 0.001 * s.D;
  EXPECT_TRUE(phase_set(s, 1.0).valid);
  s.d = s.D;
  EXPECT_THROW(phase_set(s, 1.0), cvgrav::InvalidInput);
}

TEST(CatPhase, FormulaValues) {
  EXPECT_EQ(logneg_cat_phase(0.0), 0.0);
  EXPECT_NEAR(logneg_cat_phase(M_PI), 1.0, 1e-15);
  auto g = oracle::rng(51);
  for (int trial = 0; trial < 50; ++trial) {
    const double x = oracle::uniform(g, -20.0, 20.0);
    const double v = logneg_cat_phase(x);
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
    EXPECT_NEAR(v, logneg_cat_phase(x + 2.0 * M_PI), 1e-12);
  }
  EXPECT_LT(oracle::rel(logneg_cat_phase(1e-7), 1e-7 / (2.0 * std::log(2.0))), 1e-6);
}

TEST(CatPhase, ScenarioSlopeEqualsNonGaussianRate) {
  const ScenarioConfig s;
  const double rate = entangling_rate_nongaussian(s);
  const double direct = 4.0 * s.G * s.M_A * s.M_B * std::pow(s.d / 2.0, 2) /
                        (s.hbar * std::pow(s.D, 3) * std::log(2.0));
  EXPECT_LT(oracle::rel(rate, direct), 1e-14);
  const double t = 1e-3 / rate;
  EXPECT_LT(oracle::rel(logneg_cat_phase(phase_set(s, t).delta_phi) / t, rate), 1e-3);
  auto s2 = s;
  s2.d *= 3.0;
  EXPECT_LT(oracle::rel(entangling_rate_nongaussian(s2), 9.0 * rate), 1e-14);
}

TEST(CatPhase, PairPhaseMatchesScenarioPhase) {
  const ScenarioConfig s;
  const auto dim = cvgrav::to_dimensionless(s);
  const double t = 12.0;
  const double alpha = dim.cat_alpha(s.d);
  EXPECT_LT(oracle::rel(cat_pair_delta_phi(alpha, dim.theta(t)), phase_set(s, t).delta_phi_approx),
            1e-13);
}

TEST(Displacement, ProtocolDisplacementIsImaginary) {
  const auto b = DisplacementParam::from_protocol(0.3, 2.0);
  EXPECT_EQ(b.beta.real(), 0.0);
  EXPECT_NEAR(b.beta.imag(), -0.3 * 2.0 / std::sqrt(2.0), 1e-16);
  EXPECT_NEAR(b.magnitude(), 0.3 * std::sqrt(2.0), 1e-15);
}

TEST(CatOverlap, KnownValues) {
  const double alpha = 2.5;
  EXPECT_EQ(cat_displaced_overlap(ib(0.0), alpha).value, 1.0);
  EXPECT_LT(cat_displaced_overlap(ib(M_PI / (4.0 * alpha)), alpha).value, 1e-30);
  EXPECT_NEAR(cat_displaced_overlap(ib(0.1), alpha).value, 0.76249, 5e-6);
  EXPECT_TRUE(cat_displaced_overlap(ib(0.1), alpha).valid);
  EXPECT_FALSE(cat_displaced_overlap(ib(0.1), 0.4).valid);
}

TEST(CatOverlap, FockOracleAgreement) {
  const double alpha = 2.5;
  const FockOverlapOracle oracle_fn(fock::cat_state(alpha, 0.0, 64));
  for (double b : {0.0, 0.05, 0.1, M_PI / 10.0, 0.3}) {
    EXPECT_NEAR(oracle_fn(ib(b)), cat_displaced_overlap_exact(ib(b), alpha), 1e-6) << b;
    EXPECT_NEAR(cat_displaced_overlap(ib(b), alpha).value, cat_displaced_overlap_exact(ib(b), alpha),
                1e-5);
  }
  const DisplacementParam general{Complex(0.2, -0.1)};
  EXPECT_NEAR(oracle_fn(general), cat_displaced_overlap_exact(general, alpha), 1e-6);
}

TEST(SqueezedOverlap, KnownValuesAndFock) {
  EXPECT_EQ(squeezed_displaced_overlap(ib(0.0), 2.0), 1.0);
  const double b = 0.05;
  const double closed = squeezed_displaced_overlap(ib(b), 2.0);
  EXPECT_NEAR(closed, std::exp(-b * b * std::exp(4.0)), 1e-15);
  EXPECT_NEAR(squeezed_displaced_overlap(ib(b), std::polar(2.0, M_PI)), closed, 1e-14);
  const FockOverlapOracle oracle_fn(fock::squeezed_vacuum(std::polar(2.0, M_PI), 860));
  EXPECT_NEAR(oracle_fn(ib(b)), closed, 1e-6);
  const Complex xi = std::polar(0.7, 1.1);
  const DisplacementParam general{Complex(0.3, 0.2)};
  const FockOverlapOracle general_fn(fock::squeezed_vacuum(xi, 60));
  EXPECT_NEAR(general_fn(general), squeezed_displaced_overlap(general, xi), 1e-6);
}

TEST(SqueezedOverlap, SmallDisplacementAgainstCatOfEqualCentreSpread) {
  // e^r = 5 gives the squeezed state the cat's branch-centre spread sqrt(2) alpha;
  // the cat's extra vacuum variance 1/2 per branch shows up as exactly b^2.
  const double b = 1e-3, r = std::log(5.0);
  const double cat = cat_displaced_overlap(ib(b), 2.5).value;
  const double sqz = squeezed_displaced_overlap(ib(b), r);
  EXPECT_NEAR((sqz - cat) / (b * b), 1.0, 1e-3);
  EXPECT_NEAR(sqz, 1.0 - 2.0 * b * b * 12.5, 1e-9);
  EXPECT_NEAR(cat, 1.0 - 2.0 * b * b * 13.0, 1e-9);
}

TEST(SqueezedCatOverlap, PhaseApproach) {
  EXPECT_EQ(squeezed_cat_overlap_phase(ib(0.0), 2.5), 1.0);
  EXPECT_LT(squeezed_cat_overlap_phase(ib(M_PI / 10.0), 2.5), 1e-30);
  for (double b : {0.03, 0.1, 0.2})
    EXPECT_NEAR(squeezed_cat_overlap_phase(ib(b), 2.5),
                cat_displaced_overlap(ib(b), 2.5).value / std::exp(-b * b), 1e-15);
}

TEST(SqueezedCatOverlap, ZeroSqueezingReducesToCat) {
  for (double b : {0.0, 0.07, 0.2, 0.3}) {
    const auto full = squeezed_cat_overlap_full(ib(b), 2.5, 0.0, 0.0);
    EXPECT_NEAR(full.exact, cat_displaced_overlap_exact(ib(b), 2.5), 1e-14);
    EXPECT_NEAR(full.simplified, cat_displaced_overlap(ib(b), 2.5).value, 1e-15);
    EXPECT_TRUE(full.valid);
  }
}

TEST(SqueezedCatOverlap, StrictlyBelowPhaseCurveAtQuarterTurn) {
  for (int k = 0; k <= 60; ++k) {
    const double b = 0.3 * k / 60.0;
    const double phase = squeezed_cat_overlap_phase(ib(b), 2.5);
    const double full = squeezed_cat_overlap_full(ib(b), 2.5, 2.0, M_PI / 2.0).exact;
    if (phase > 1e-12 && b > 0.0) {
      EXPECT_LT(full, phase) << b;
    }
  }
}

TEST(SqueezedCatOverlap, AlignedSqueezingStaysCloseToPhaseCurve) {
  const double b = 0.3;
  const auto full = squeezed_cat_overlap_full(ib(b), 2.5, 2.0, 0.0);
  const double phase = squeezed_cat_overlap_phase(ib(b), 2.5);
  EXPECT_NEAR(full.simplified / phase, std::exp(-b * b * std::exp(-4.0)), 1e-12);
  EXPECT_LT(1.0 - std::exp(-b * b * std::exp(-4.0)), 2e-3);
  EXPECT_LE(std::abs(full.exact - phase), 2e-3);
}

TEST(SqueezedCatOverlap, ValidityFlag) {
  EXPECT_FALSE(squeezed_cat_overlap_full(ib(0.1), 2.5, 2.0, M_PI).valid);
  EXPECT_TRUE(squeezed_cat_overlap_full(ib(0.1), 2.5, 2.0, 0.0).valid);
}

TEST(SqueezedCatOverlap, FockOracleAtQuarterTurn) {
  const auto psi = fock::squeezed_cat_auto(2.5, std::polar(2.0, M_PI / 2.0));
  EXPECT_LE(psi.cutoff(), 2048);
  const FockOverlapOracle oracle_fn(psi);
  for (double b : {0.05, 0.15, 0.3})
    EXPECT_NEAR(oracle_fn(ib(b)), squeezed_cat_overlap_full(ib(b), 2.5, 2.0, M_PI / 2.0).exact, 1e-6);
}

TEST(SqueezedCatOverlap, NeverAbovePhaseCurve) {
  for (double theta : {0.0, M_PI / 4.0, M_PI / 2.0, 3.0 * M_PI / 4.0, M_PI})
    for (int k = 0; k <= 30; ++k) {
      const double b = 0.01 * k;
      EXPECT_LE(squeezed_cat_overlap_full(ib(b), 2.5, 2.0, theta).exact,
                squeezed_cat_overlap_phase(ib(b), 2.5) + 1e-9);
    }
}

struct FamilyCase {
  const char* name;
  fock::FockVector psi;
};

std::vector<FamilyCase> small_spread_families() {
  return {{"vacuum", fock::vacuum(20)},
          {"coherent", fock::coherent(Complex(0.6, -0.3), 40)},
          {"squeezed", fock::squeezed_vacuum(std::polar(0.4, M_PI), 40)},
          {"cat", fock::cat_state(0.8, 0.0, 40)},
          {"squeezed_cat", fock::squeezed_cat(0.8, std::polar(0.3, M_PI), 60)}};
}

TEST(SmallDisplacementLaw, QuadraticCoefficientIsTwiceVariance) {
  const std::vector<double> bs{1e-3, 2e-3, 4e-3};
  for (const auto& c : small_spread_families()) {
    const FockOverlapOracle fn(c.psi);
    std::vector<double> y;
    for (double b : bs) y.push_back(fn(ib(b)));
    const auto fit = fit_quadratic(bs, y);
    const double var = std::pow(fock::quadrature_moments(c.psi).delta_X(), 2);
    EXPECT_LT(oracle::rel(fit.a2, -2.0 * var), 5e-3) << c.name;
    EXPECT_LT(fit.max_residual, 1e-9) << c.name;
    EXPECT_NEAR(fit.a0, 1.0, 1e-9) << c.name;
  }
}

TEST(SmallDisplacementLaw, ResidualOfWideStatesIsFourthOrder) {
  // Wide states carry a b^4 term of order Var^2, so the residual of the
  // two-parameter fit must shrink sixteenfold when the sample range halves.
  auto residual = [](double scale) {
    std::vector<double> bs{1e-3 * scale, 2e-3 * scale, 4e-3 * scale}, y;
    for (double b : bs) y.push_back(cat_displaced_overlap_exact(ib(b), 2.5));
    return fit_quadratic(bs, y).max_residual;
  };
  EXPECT_NEAR(residual(1.0) / residual(0.5), 16.0, 0.5);
}

TEST(SmallDisplacementLaw, OverlapFallsWithSpreadAcrossFamilies) {
  const double b = 0.01;
  std::vector<std::pair<double, double>> pts;
  for (const auto& c : small_spread_families()) {
    const FockOverlapOracle fn(c.psi);
    pts.emplace_back(fock::quadrature_moments(c.psi).delta_X(), fn(ib(b)));
  }
  pts.emplace_back(std::sqrt(12.5), squeezed_displaced_overlap(ib(b), std::log(5.0)));
  pts.emplace_back(std::sqrt(6.25 * (1 + std::tanh(6.25)) + 0.5),
                   cat_displaced_overlap_exact(ib(b), 2.5));
  std::sort(pts.begin(), pts.end());
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (pts[i].first > pts[i - 1].first + 1e-9) {
      EXPECT_LT(pts[i].second, pts[i - 1].second);
    }
}

TEST(FitQuadratic, RecoversExactParabola) {
  const auto fit = fit_quadratic({0.1, 0.2, 0.5}, {3.0 - 2.0 * 0.01, 3.0 - 2.0 * 0.04, 3.0 - 2.0 * 0.25});
  EXPECT_NEAR(fit.a0, 3.0, 1e-12);
  EXPECT_NEAR(fit.a2, -2.0, 1e-12);
  EXPECT_LT(fit.max_residual, 1e-12);
}

TEST(RateReport, MatchedScenario) {
  const ScenarioConfig s;
  RateReportOptions opt;
  opt.eta_probe = 1e-4;
  opt.fock_track = true;
  const auto r = rate_equality_report(s, opt);
  EXPECT_LT(r.analytic_relative_deviation, 1e-12);
  EXPECT_LT(oracle::rel(r.slope_gaussian_numeric, r.rate_gaussian_analytic), 1e-3);
  EXPECT_LT(oracle::rel(r.slope_cat_numeric, r.rate_nongaussian_analytic), 1e-3);
  ASSERT_TRUE(r.slope_fock_numeric.has_value());
  EXPECT_LT(oracle::rel(*r.slope_fock_numeric, r.rate_gaussian_analytic), 1e-3);
  EXPECT_LT(r.max_relative_deviation, 1e-3);
  EXPECT_TRUE(r.phase_regime_valid);
}

TEST(RateReport, MismatchedSpreadScalesQuadratically) {
  const ScenarioConfig s;
  RateReportOptions opt;
  opt.dx_gaussian = 3.0 * s.d / 2.0;
  const auto r = rate_equality_report(s, opt);
  EXPECT_LT(oracle::rel(r.rate_gaussian_analytic / r.rate_nongaussian_analytic, 9.0), 1e-12);
}

TEST(RateReport, InjectedGravityFactorIsDetected) {
  RateReportOptions opt;
  opt.gravity_factor_gaussian = 2.0;
  const auto r = rate_equality_report(ScenarioConfig{}, opt);
  EXPECT_NEAR(r.analytic_relative_deviation, 0.5, 1e-12);
  EXPECT_GT(r.max_relative_deviation, 0.4);
}

TEST(RateReport, InvariantUnderLengthScale) {
  ScenarioConfig s;
  const auto r1 = rate_equality_report(s);
  s.x0 *= 4.0;
  const auto r2 = rate_equality_report(s);
  EXPECT_EQ(r1.rate_gaussian_analytic, r2.rate_gaussian_analytic);
  EXPECT_EQ(r1.rate_nongaussian_analytic, r2.rate_nongaussian_analytic);
}

TEST(RateReport, JsonFields) {
  const auto j = to_json(rate_equality_report(ScenarioConfig{}));
  EXPECT_EQ(j.at("schema_version"), "spec_v1");
  for (const char* key : {"rate_gaussian_analytic", "rate_nongaussian_analytic",
                          "slope_gaussian_numeric", "slope_cat_numeric",
                          "max_relative_deviation", "phase_regime_valid"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_TRUE(j.at("slope_fock_numeric").is_null());
  EXPECT_EQ(to_json(phase_set(ScenarioConfig{}, 1.0)).at("schema_version"), "spec_v1");
  EXPECT_TRUE(to_json(expand_potential(ScenarioConfig{})).contains("lambda"));
}

TEST(RateReport, RejectsNonPositiveProbe) {
  RateReportOptions opt;
  opt.eta_probe = 0.0;
  EXPECT_THROW(rate_equality_report(ScenarioConfig{}, opt), cvgrav::InvalidInput);
}

}  // namespace
