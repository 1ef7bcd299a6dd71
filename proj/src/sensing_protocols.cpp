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
#include "cvgrav/sensing_protocols.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "cvgrav/error.hpp"
#include "cvgrav/gaussian_states.hpp"
#include "cvgrav/linalg.hpp"

namespace cvgrav::sensing {
namespace {

double gmm(const ScenarioConfig& s) { return s.G * s.M_A * s.M_B; }

bool small_separation(const ScenarioConfig& s) { return s.d < kSmallSeparationRatio * s.D; }

// <a|c> for coherent states.
Complex coherent_overlap(Complex a, Complex c) {
  return std::exp(-0.5 * std::norm(a) - 0.5 * std::norm(c) + std::conj(a) * c);
}

// <a|D(beta)|b> = e^{(beta b^* - beta^* b)/2} <a|b + beta>.
Complex displaced_matrix_element(Complex a, Complex beta, Complex b) {
  return std::exp(0.5 * (beta * std::conj(b) - std::conj(beta) * b)) *
         coherent_overlap(a, b + beta);
}

// Slope at t = 0 from secants E(t)/t and E(t/2)/(t/2), Richardson-combined
// so the O(t) curvature term cancels.
double initial_slope(const std::function<double(double)>& e_n, double t) {
  return 4.0 * e_n(0.5 * t) / t - e_n(t) / t;
}

}  // namespace

PotentialExpansion expand_potential(const ScenarioConfig& scenario) {
  scenario.validate();
  const double g = gmm(scenario);
  const double D = scenario.D;
  const double x0 = scenario.x0;
  PotentialExpansion out;
  out.c0 = -g / D;
  // -g / (D + u) with u = x0 (X_B - X_A): the linear term g u / D^2.
  out.c1 = -g * x0 / (D * D);
  out.c2_local = -g * x0 * x0 / (D * D * D);
  out.c2_cross = 2.0 * g * x0 * x0 / (D * D * D);
  out.lambda = out.c2_cross;
  out.valid = small_separation(scenario);
  return out;
}

double potential(const ScenarioConfig& scenario, double X_A, double X_B) {
  const double separation = scenario.D + scenario.x0 * (X_B - X_A);
  if (!(separation > 0.0)) {
    throw InvalidInput("potential: particles overlap");
  }
  return -gmm(scenario) / separation;
}

PhaseSet phase_set(const ScenarioConfig& scenario, double t) {
  scenario.validate();
  const double scale = gmm(scenario) * t / scenario.hbar;
  const double D = scenario.D;
  const double d = scenario.d;
  PhaseSet out;
  out.phi_LL = scale / D;
  out.phi_RR = scale / D;
  out.phi_RL = scale / (D - d);
  out.phi_LR = scale / (D + d);
  out.delta_phi = out.phi_RL + out.phi_LR - 2.0 * out.phi_LL;
  out.delta_phi_approx = 2.0 * scale * d * d / (D * D * D);
  out.relative_gap = out.delta_phi != 0.0
                         ? std::abs(out.delta_phi - out.delta_phi_approx) / std::abs(out.delta_phi)
                         : 0.0;
  out.valid = small_separation(scenario);
  return out;
}

double logneg_cat_phase(double delta_phi) {
  return std::log2(1.0 + std::abs(std::sin(0.5 * delta_phi)));
}

double entangling_rate_nongaussian(const ScenarioConfig& scenario) {
  scenario.validate();
  const double dx = 0.5 * scenario.d;
  const double D = scenario.D;
  return 4.0 * gmm(scenario) * dx * dx / (scenario.hbar * D * D * D * std::log(2.0));
}

double cat_pair_delta_phi(double alpha, double theta) { return 8.0 * theta * alpha * alpha; }

DisplacementParam DisplacementParam::from_protocol(double theta, double X_A) {
  return {Complex(0.0, -theta * X_A / std::sqrt(2.0))};
}

FlaggedValue cat_displaced_overlap(const DisplacementParam& beta, double alpha) {
  const double b = beta.magnitude();
  const double c = std::cos(2.0 * b * alpha);
  return {std::exp(-b * b) * c * c, alpha * alpha > 0.25};
}

double cat_displaced_overlap_exact(const DisplacementParam& beta, double alpha) {
  const double c2 = 1.0 / (2.0 + 2.0 * std::exp(-2.0 * alpha * alpha));
  Complex amplitude(0.0, 0.0);
  for (double s1 : {1.0, -1.0}) {
    for (double s2 : {1.0, -1.0}) {
      amplitude += displaced_matrix_element(s1 * alpha, beta.beta, s2 * alpha);
    }
  }
  return std::norm(c2 * amplitude);
}

double squeezed_displaced_overlap(const DisplacementParam& beta, double r) {
  const double b = beta.magnitude();
  return std::exp(-b * b * std::exp(2.0 * r));
}

double squeezed_displaced_overlap(const DisplacementParam& beta, Complex xi) {
  const double r = std::abs(xi);
  const Complex rotation = r > 0.0 ? xi / r : Complex(1.0, 0.0);
  const Complex shift =
      beta.beta * std::cosh(r) + std::conj(beta.beta) * rotation * std::sinh(r);
  return std::exp(-std::norm(shift));
}

double squeezed_cat_overlap_phase(const DisplacementParam& beta, double alpha) {
  const double c = std::cos(2.0 * beta.magnitude() * alpha);
  return c * c;
}

SqueezedCatOverlap squeezed_cat_overlap_full(const DisplacementParam& beta, double alpha,
                                             double r, double theta) {
  const double b = beta.magnitude();
  const Complex phase = std::polar(1.0, theta);
  const double u2 = std::norm(std::cosh(r) - std::sinh(r) * phase);
  const double v2 = std::norm(std::cosh(r) + std::sinh(r) * phase);
  const double branch = std::exp(-2.0 * alpha * alpha * v2);
  const double n2 = 2.0 * (1.0 + branch);
  const double envelope = std::exp(-b * b * u2);
  const double bracket =
      std::cos(2.0 * b * alpha) +
      branch * std::cosh(2.0 * b * alpha * std::sinh(2.0 * r) * std::sin(theta));
  SqueezedCatOverlap out;
  out.exact = 4.0 * envelope * bracket * bracket / (n2 * n2);
  const double c = std::cos(2.0 * b * alpha);
  out.simplified = envelope * c * c;
  out.valid = 2.0 * alpha * alpha * v2 > 10.0;
  return out;
}

FockOverlapOracle::FockOverlapOracle(fock::FockVector psi) : psi_(std::move(psi)) {
  if (psi_.guard_weight() >= fock::kTailTolerance) {
    throw GuardViolation("FockOverlapOracle: state weight " + format_weight(psi_.guard_weight()) +
                         " on the Fock guard band");
  }
  const fock::PositionSpectrum spectrum = fock::position_spectrum(psi_.cutoff());
  vectors_ = spectrum.vectors;
  positions_ = spectrum.values;
  coefficients_ = vectors_.transpose().cast<Complex>() * psi_.amplitudes();
}

double FockOverlapOracle::operator()(const DisplacementParam& beta) const {
  const int n = psi_.cutoff();
  Eigen::VectorXcd shifted;
  if (beta.beta.real() != 0.0) {
    shifted = fock::displacement_matrix(beta.beta, n) * psi_;
  } else {
    // D(i b) = exp(i sqrt(2) b X), diagonal on the eigenbasis of the truncated X.
    const double k = std::sqrt(2.0) * beta.beta.imag();
    Eigen::VectorXcd rotated(n);
    for (int m = 0; m < n; ++m) rotated(m) = std::polar(1.0, k * positions_(m)) * coefficients_(m);
    shifted = vectors_.cast<Complex>() * rotated;
  }
  const int g = fock::guard_band(n);
  const double guard = shifted.tail(g).squaredNorm();
  if (guard >= fock::kTailTolerance) {
    throw GuardViolation("FockOverlapOracle: displaced state puts weight " + format_weight(guard) +
                         " on the Fock guard band");
  }
  return std::norm(fock::inner_product(psi_, shifted));
}

QuadraticFit fit_quadratic(const std::vector<double>& b, const std::vector<double>& y) {
  if (b.size() != y.size() || b.size() < 2) {
    throw InvalidInput("fit_quadratic: need at least two matching samples");
  }
  const Eigen::Index n = static_cast<Eigen::Index>(b.size());
  Eigen::MatrixXd design(n, 2);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    design(i, 0) = 1.0;
    design(i, 1) = b[i] * b[i];
    rhs(i) = y[i];
  }
  const Eigen::Vector2d coef = design.colPivHouseholderQr().solve(rhs);
  QuadraticFit out{coef(0), coef(1), 0.0};
  out.max_residual = (design * coef - rhs).cwiseAbs().maxCoeff();
  return out;
}

double cat_pair_logneg_fock(double alpha, double theta, int cutoff) {
  const fock::FockVector cat = fock::cat_state(alpha, 0.0, cutoff);
  return fock::log_negativity_fock(fock::evolve_bilinear(cat, cat, theta));
}

double relative_deviation(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale > 0.0 ? std::abs(a - b) / scale : 0.0;
}

RateEqualityReport rate_equality_report(const ScenarioConfig& scenario,
                                        const RateReportOptions& options) {
  scenario.validate();
  if (!(options.eta_probe > 0.0)) {
    throw InvalidInput("rate_equality_report: eta_probe must be positive");
  }
  RateEqualityReport out;
  out.dx_cat = 0.5 * scenario.d;
  out.dx_gaussian = options.dx_gaussian.value_or(out.dx_cat);
  if (!(out.dx_gaussian > 0.0)) {
    throw InvalidInput("rate_equality_report: the Gaussian position spread must be positive");
  }
  out.eta_probe = options.eta_probe;
  out.phase_regime_valid = small_separation(scenario);

  ScenarioConfig gaussian_scenario = scenario;
  gaussian_scenario.G *= options.gravity_factor_gaussian;
  out.rate_gaussian_analytic = gaussian::entangling_rate_gaussian(gaussian_scenario, out.dx_gaussian);
  out.rate_nongaussian_analytic = entangling_rate_nongaussian(scenario);

  const DimensionlessScenario dim = to_dimensionless(scenario);
  const double dX = dim.delta_X(out.dx_gaussian);
  if (dim.lambda_over_hbar > 0.0) {
    out.t_probe = options.eta_probe / (dX * dX * dim.lambda_over_hbar);

    // Gaussian track: covariance evolution of the pure product state.
    const auto initial = gaussian::GaussianTwoModeState::product(dX, 0.5 / dX);
    const gaussian::CouplingGenerator generator{
        to_dimensionless(gaussian_scenario).lambda_over_hbar};
    out.slope_gaussian_numeric = initial_slope(
        [&](double t) {
          return gaussian::log_negativity_gaussian(gaussian::evolve(initial, generator, t));
        },
        out.t_probe);

    // Cat track: branch phases at its own small-eta probe time.
    if (out.dx_cat > 0.0) {
      const double dX_cat = dim.delta_X(out.dx_cat);
      const double t_cat = options.eta_probe / (dX_cat * dX_cat * dim.lambda_over_hbar);
      out.slope_cat_numeric = initial_slope(
          [&](double t) { return logneg_cat_phase(phase_set(scenario, t).delta_phi); }, t_cat);
    }

    if (options.fock_track) {
      // Squeezed vacuum with Delta X^2 = e^{-2r} / 2; a negative real xi is
      // the theta = pi orientation that stretches X.
      const double r = -0.5 * std::log(2.0 * dX * dX);
      const Complex xi(r, 0.0);
      const int cutoff = std::max(options.fock_cutoff, fock::squeeze_cutoff(std::abs(r)));
      const fock::FockVector mode = fock::squeezed_vacuum(xi, cutoff);
      out.slope_fock_numeric = initial_slope(
          [&](double t) {
            return fock::log_negativity_fock(fock::evolve_bilinear(mode, mode, dim.theta(t)));
          },
          out.t_probe);
    }
  }

  out.analytic_relative_deviation =
      relative_deviation(out.rate_gaussian_analytic, out.rate_nongaussian_analytic);
  std::vector<double> values{out.rate_gaussian_analytic, out.rate_nongaussian_analytic,
                             out.slope_gaussian_numeric, out.slope_cat_numeric};
  if (out.slope_fock_numeric) values.push_back(*out.slope_fock_numeric);
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (std::size_t j = i + 1; j < values.size(); ++j) {
      out.max_relative_deviation =
          std::max(out.max_relative_deviation, relative_deviation(values[i], values[j]));
    }
  }
  return out;
}

nlohmann::json to_json(const RateEqualityReport& report) {
  nlohmann::json j;
  j["schema_version"] = kReportSchemaVersion;
  j["dx_gaussian"] = report.dx_gaussian;
  j["dx_cat"] = report.dx_cat;
  j["t_probe"] = report.t_probe;
  j["eta_probe"] = report.eta_probe;
  j["rate_gaussian_analytic"] = report.rate_gaussian_analytic;
  j["rate_nongaussian_analytic"] = report.rate_nongaussian_analytic;
  j["slope_gaussian_numeric"] = report.slope_gaussian_numeric;
  j["slope_cat_numeric"] = report.slope_cat_numeric;
  j["slope_fock_numeric"] =
      report.slope_fock_numeric ? nlohmann::json(*report.slope_fock_numeric) : nlohmann::json();
  j["analytic_relative_deviation"] = report.analytic_relative_deviation;
  j["max_relative_deviation"] = report.max_relative_deviation;
  j["phase_regime_valid"] = report.phase_regime_valid;
  return j;
}

nlohmann::json to_json(const PhaseSet& phases) {
  return {{"schema_version", kReportSchemaVersion},
          {"phi_LL", phases.phi_LL},
          {"phi_LR", phases.phi_LR},
          {"phi_RL", phases.phi_RL},
          {"phi_RR", phases.phi_RR},
          {"delta_phi", phases.delta_phi},
          {"delta_phi_approx", phases.delta_phi_approx},
          {"relative_gap", phases.relative_gap},
          {"valid", phases.valid}};
}

nlohmann::json to_json(const PotentialExpansion& expansion) {
  return {{"schema_version", kReportSchemaVersion},
          {"c0", expansion.c0},
          {"c1", expansion.c1},
          {"c2_local", expansion.c2_local},
          {"c2_cross", expansion.c2_cross},
          {"lambda", expansion.lambda},
          {"valid", expansion.valid}};
}

}  // namespace cvgrav::sensing
