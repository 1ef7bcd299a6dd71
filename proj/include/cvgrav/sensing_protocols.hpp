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

#include <complex>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "cvgrav/fock_space.hpp"
#include "cvgrav/scenario.hpp"

// Force-sensing and entanglement results for two gravitating particles:
// branch phases of a cat pair, the expanded Newtonian potential, overlaps of
// states with their displaced copies, and the equality of the Gaussian and
// cat-state entangling rates.
namespace cvgrav::sensing {

using Complex = std::complex<double>;

/// Regime ratio d / D below which the d << D approximations are flagged valid.
inline constexpr double kSmallSeparationRatio = 0.01;

/// Second-order expansion of V = -G M_A M_B / (D + x_B - x_A) in the
/// dimensionless quadratures x = x0 X:
///   V ~ c0 + c1 (X_A - X_B) + c2_local (X_A^2 + X_B^2) + c2_cross X_A X_B.
struct PotentialExpansion {
  double c0 = 0.0;
  double c1 = 0.0;
  double c2_local = 0.0;
  double c2_cross = 0.0;
  double lambda = 0.0;  // equals c2_cross
  bool valid = false;   // d < kSmallSeparationRatio * D
};

PotentialExpansion expand_potential(const ScenarioConfig& scenario);

/// Exact potential energy (J) at dimensionless positions X_A, X_B.
double potential(const ScenarioConfig& scenario, double X_A, double X_B);

/// Branch phases G M_A M_B t / (hbar D_branch) of a cat pair. The first label
/// is particle A's branch, the second particle B's.
struct PhaseSet {
  double phi_LL = 0.0;
  double phi_LR = 0.0;
  double phi_RL = 0.0;
  double phi_RR = 0.0;
  double delta_phi = 0.0;         // phi_RL + phi_LR - 2 phi_LL
  double delta_phi_approx = 0.0;  // 2 G M_A M_B t d^2 / (hbar D^3)
  double relative_gap = 0.0;      // |delta_phi - approx| / |delta_phi|
  bool valid = false;             // d < kSmallSeparationRatio * D
};

PhaseSet phase_set(const ScenarioConfig& scenario, double t);

/// log2(1 + |sin(delta_phi / 2)|), for branches with negligible overlap.
double logneg_cat_phase(double delta_phi);

/// 4 G M_A M_B (d/2)^2 / (hbar D^3 ln 2).
double entangling_rate_nongaussian(const ScenarioConfig& scenario);

/// Phase difference 8 theta alpha^2 of two cats with real amplitude alpha
/// under exp(-i theta X_A X_B).
double cat_pair_delta_phi(double alpha, double theta);

struct DisplacementParam {
  Complex beta{0.0, 0.0};

  double magnitude() const { return std::abs(beta); }
  /// i b.
  static DisplacementParam imaginary(double b) { return {Complex(0.0, b)}; }
  /// Displacement of particle B when A sits at position X_A:
  /// beta = -i theta X_A / sqrt(2).
  static DisplacementParam from_protocol(double theta, double X_A);
};

struct FlaggedValue {
  double value = 0.0;
  bool valid = false;
};

/// e^{-|beta|^2} cos^2(2 |beta| alpha); valid when alpha^2 > 1/4.
FlaggedValue cat_displaced_overlap(const DisplacementParam& beta, double alpha);
/// |<cat|D(beta)|cat>|^2 for the phi = 0 cat, all four branch terms kept.
double cat_displaced_overlap_exact(const DisplacementParam& beta, double alpha);

/// exp(-|beta|^2 e^{2r}) for the momentum-squeezed vacuum (theta = pi) and
/// imaginary beta.
double squeezed_displaced_overlap(const DisplacementParam& beta, double r);
/// |<xi|D(beta)|xi>|^2 = exp(-|beta cosh r + beta^* e^{i theta} sinh r|^2).
double squeezed_displaced_overlap(const DisplacementParam& beta, Complex xi);

/// Overlap predicted from branch phases alone: cos^2(2 |beta| alpha).
double squeezed_cat_overlap_phase(const DisplacementParam& beta, double alpha);

/// Overlap of the squeezed cat (D(alpha) + D(-alpha)) S(xi)|0> / N with its
/// copy displaced by an imaginary beta. With b = |beta|,
/// u = cosh r - sinh r e^{i theta} and v = cosh r + sinh r e^{i theta}:
///   exact      = 4 e^{-b^2 |u|^2} / N^4
///                [cos(2 b alpha) + e^{-2 alpha^2 |v|^2} cosh(2 b alpha sinh 2r sin theta)]^2
///   simplified = e^{-b^2 |u|^2} cos^2(2 b alpha)
/// valid is false when 2 alpha^2 |v|^2 <= 10 (branches overlap).
struct SqueezedCatOverlap {
  double exact = 0.0;
  double simplified = 0.0;
  bool valid = false;
};
SqueezedCatOverlap squeezed_cat_overlap_full(const DisplacementParam& beta, double alpha,
                                             double r, double theta);

/// |<psi|D(beta)|psi>|^2 evaluated in the truncated basis. Imaginary beta
/// uses D(i b) = exp(i sqrt(2) b X) on the eigenbasis of the truncated X,
/// so one decomposition serves a whole sweep; other beta go through the
/// displacement matrix. Both psi and every displaced copy must keep weight
/// below 1e-10 on the top Fock guard band, else GuardViolation.
class FockOverlapOracle {
 public:
  explicit FockOverlapOracle(fock::FockVector psi);

  double operator()(const DisplacementParam& beta) const;
  const fock::FockVector& state() const { return psi_; }

 private:
  fock::FockVector psi_;
  Eigen::MatrixXd vectors_;
  Eigen::VectorXd positions_;
  Eigen::VectorXcd coefficients_;
};

/// Least-squares fit y = a0 + a2 b^2 over the sample points.
struct QuadraticFit {
  double a0 = 0.0;
  double a2 = 0.0;
  double max_residual = 0.0;
};
QuadraticFit fit_quadratic(const std::vector<double>& b, const std::vector<double>& y);

/// E_N of two cats of amplitude alpha after exp(-i theta X_A X_B), computed
/// by full bilinear evolution in the truncated basis.
double cat_pair_logneg_fock(double alpha, double theta, int cutoff);

struct RateReportOptions {
  /// Position spread of the Gaussian track in metres; unset means d / 2.
  std::optional<double> dx_gaussian;
  /// Dimensionless coupling eta = Delta X^2 theta at which slopes are probed;
  /// numeric slopes extrapolate secants at eta and eta/2 to t = 0.
  double eta_probe = 1e-4;
  /// Adds a third slope from bilinear evolution of two squeezed vacua.
  bool fock_track = false;
  int fock_cutoff = 24;
  /// Multiplies G in the Gaussian track only (fault injection).
  double gravity_factor_gaussian = 1.0;
};

struct RateEqualityReport {
  double dx_gaussian = 0.0;  // m
  double dx_cat = 0.0;       // m, d / 2
  double t_probe = 0.0;      // s
  double eta_probe = 0.0;
  double rate_gaussian_analytic = 0.0;     // 1/s
  double rate_nongaussian_analytic = 0.0;  // 1/s
  double slope_gaussian_numeric = 0.0;     // 1/s
  double slope_cat_numeric = 0.0;          // 1/s
  std::optional<double> slope_fock_numeric;
  double analytic_relative_deviation = 0.0;
  double max_relative_deviation = 0.0;
  bool phase_regime_valid = false;
};

RateEqualityReport rate_equality_report(const ScenarioConfig& scenario,
                                        const RateReportOptions& options = {});

/// |a - b| / max(|a|, |b|), zero when both vanish.
double relative_deviation(double a, double b);

inline constexpr const char* kReportSchemaVersion = "spec_v1";
nlohmann::json to_json(const RateEqualityReport& report);
nlohmann::json to_json(const PhaseSet& phases);
nlohmann::json to_json(const PotentialExpansion& expansion);

}  // namespace cvgrav::sensing
