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
#include "selfcheck.hpp"

#include <cmath>
#include <functional>
#include <iomanip>
#include <ostream>
#include <random>

#include "cvgrav/fock_space.hpp"
#include "cvgrav/gaussian_states.hpp"
#include "cvgrav/phase_space.hpp"
#include "cvgrav/sensing_protocols.hpp"

namespace cvgrav::cli {
namespace {

using Complex = std::complex<double>;

struct Check {
  const char* name;
  double tolerance;
  std::function<double()> measure;  // returns the deviation held to tolerance
};

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

std::vector<Check> checks(const SelfcheckOptions& options) {
  return {
      {"coherent_overlap", 1e-12,
       [] {
         const auto a = fock::coherent(1.5, 40);
         const auto b = fock::coherent(-1.5, 40);
         return std::abs(std::abs(fock::inner_product(a, b)) - std::exp(-2.0 * 1.5 * 1.5));
       }},
      {"cat_normalization", 1e-10,
       [] {
         const auto cat = fock::cat_state(2.5, 0.0, 60);
         return std::abs(cat.amplitudes().norm() - 1.0) + cat.tail_weight();
       }},
      {"displacement_unitarity", 1e-8,
       [] { return fock::displacement_matrix(Complex(1.0, 0.5), 60).bulk_unitarity_error(); }},
      {"squeeze_unitarity", 1e-8,
       [] { return fock::squeeze_matrix(std::polar(1.0, M_PI), 80).bulk_unitarity_error(); }},
      {"squeezed_variance", 1e-6,
       [] {
         const auto m = fock::quadrature_moments(fock::squeezed_vacuum(std::polar(1.0, M_PI), 150));
         return std::abs(0.5 * m.sigma(0, 0) - 0.5 * std::exp(2.0)) + std::abs(m.sigma.determinant() - 1.0);
       }},
      {"displacement_composition", 1e-8,
       [] {
         const int n = 60;
         const int bulk = n - fock::guard_band(n) - 20;
         const Complex a(0.7, -0.2);
         const Complex b(-0.3, 0.4);
         const Eigen::MatrixXcd lhs =
             (fock::displacement_matrix(b, n) * fock::displacement_matrix(a, n)).entries();
         const Eigen::MatrixXcd rhs = std::exp(0.5 * (b * std::conj(a) - std::conj(b) * a)) *
                                      fock::displacement_matrix(a + b, n).entries();
         return (lhs - rhs).topLeftCorner(bulk, bulk).cwiseAbs().maxCoeff();
       }},
      {"expm_nilpotent_agreement", 1e-13,
       [] {
         const gaussian::CouplingGenerator g{0.37};
         return (gaussian::transfer_matrix(g, 1.9) - gaussian::transfer_matrix_nilpotent(g, 1.9))
             .cwiseAbs()
             .maxCoeff();
       }},
      {"gaussian_reversibility", 1e-12,
       [] {
         const auto s = gaussian::GaussianTwoModeState::product(0.8, 0.9);
         const gaussian::CouplingGenerator g{1.3};
         const auto back = gaussian::evolve(gaussian::evolve(s, g, 0.7), g, -0.7);
         return (back.sigma() - s.sigma()).cwiseAbs().maxCoeff();
       }},
      {"nu_min_closed_form", 1e-9,
       [] {
         std::mt19937_64 rng(7);
         std::uniform_real_distribution<double> u(0.2, 2.0);
         std::uniform_real_distribution<double> e(0.0, 1.0);
         double worst = 0.0;
         for (int k = 0; k < 20; ++k) {
           const double dX = u(rng);
           const double dP = std::max(u(rng), 0.5 / dX);
           const double eta = e(rng);
           const auto s = gaussian::evolve(gaussian::GaussianTwoModeState::product(dX, dP),
                                           {eta / (dX * dX)}, 1.0);
           const double nu = gaussian::symplectic_eigenvalues(
               gaussian::partial_transpose(s).sigma())[0];
           worst = std::max(worst, rel(nu * nu, gaussian::nu_min_squared_closed_form(dX, dP, eta)));
         }
         return worst;
       }},
      {"thermal_threshold", 0.0,
       [] {
         const auto s = gaussian::GaussianTwoModeState::product(1.0, 1.0);
         const double below = gaussian::log_negativity_gaussian(gaussian::evolve(s, {0.75 - 1e-6}, 1.0));
         const double above = gaussian::log_negativity_gaussian(gaussian::evolve(s, {0.75 + 1e-6}, 1.0));
         return (below == 0.0 && above > 0.0) ? 0.0 : 1.0;
       }},
      {"wigner_normalization", 1e-6,
       [] {
         const phase_space::SqueezedWignerParams vac{0.0, 0.0};
         const auto w = phase_space::wigner_squeezed(vac, phase_space::squeezed_grid(vac));
         return std::max(std::abs(w.integral() - 2.0), std::abs(w.purity() - 1.0));
       }},
      {"cat_wigner_fock_oracle", 1e-6,
       [] {
         const phase_space::CatWignerParams p{1.5, 0.0};
         const auto spec = phase_space::cat_grid(p);
         return (phase_space::wigner_cat(p, spec).values -
                 phase_space::wigner_from_fock(fock::cat_state(1.5, 0.0, 48), spec).values)
             .cwiseAbs()
             .maxCoeff();
       }},
      {"cat_overlap_oracle", 1e-6,
       [] {
         const auto beta = sensing::DisplacementParam::imaginary(0.1);
         const sensing::FockOverlapOracle oracle(fock::cat_state(2.5, 0.0, 60));
         return std::abs(oracle(beta) - sensing::cat_displaced_overlap_exact(beta, 2.5));
       }},
      {"squeezed_overlap_oracle", 1e-6,
       [] {
         const auto beta = sensing::DisplacementParam::imaginary(0.05);
         const sensing::FockOverlapOracle oracle(fock::squeezed_vacuum(std::polar(1.0, M_PI), 150));
         return std::abs(oracle(beta) - sensing::squeezed_displaced_overlap(beta, 1.0));
       }},
      {"squeezed_cat_overlap_oracle", 1e-6,
       [] {
         const auto beta = sensing::DisplacementParam::imaginary(0.2);
         const sensing::FockOverlapOracle oracle(
             fock::squeezed_cat_auto(2.5, std::polar(1.0, M_PI / 2)));
         return std::abs(oracle(beta) -
                         sensing::squeezed_cat_overlap_full(beta, 2.5, 1.0, M_PI / 2).exact);
       }},
      {"bell_log_negativity", 1e-12,
       [] {
         Eigen::MatrixXcd psi = Eigen::MatrixXcd::Zero(2, 2);
         psi(0, 0) = psi(1, 1) = 1.0;
         return std::abs(fock::log_negativity_fock(fock::BipartiteFockState::pure(psi)) - 1.0);
       }},
      {"bilinear_trace_hermiticity", 1e-10,
       [] {
         const auto a = fock::coherent(Complex(0.5, 0.2), 36);
         const auto rho = fock::evolve_bilinear(a, a, 0.05).density();
         return std::max(std::abs(rho.trace() - 1.0), (rho - rho.adjoint()).cwiseAbs().maxCoeff());
       }},
      {"phase_identity", 0.0,
       [] {
         ScenarioConfig s;
         s.d = 1e-6;
         const auto p = sensing::phase_set(s, 1e3);
         return std::abs(p.delta_phi - (p.phi_RL + p.phi_LR - 2.0 * p.phi_LL)) +
                std::abs(p.phi_LL - p.phi_RR);
       }},
      {"rate_equality_analytic", 1e-12,
       [options] {
         sensing::RateReportOptions o;
         o.gravity_factor_gaussian = options.gravity_factor;
         return sensing::rate_equality_report(ScenarioConfig{}, o).analytic_relative_deviation;
       }},
      {"rate_equality_numeric", 1e-3,
       [options] {
         sensing::RateReportOptions o;
         o.gravity_factor_gaussian = options.gravity_factor;
         return sensing::rate_equality_report(ScenarioConfig{}, o).max_relative_deviation;
       }},
  };
}

}  // namespace

std::vector<CheckResult> run_selfcheck(const SelfcheckOptions& options) {
  std::vector<CheckResult> out;
  for (const Check& check : checks(options)) {
    CheckResult r;
    r.name = check.name;
    r.tolerance = check.tolerance;
    try {
      r.value = check.measure();
      r.passed = std::isfinite(r.value) && r.value <= check.tolerance;
    } catch (const std::exception& e) {
      r.value = std::nan("");
      r.detail = e.what();
    }
    out.push_back(std::move(r));
  }
  return out;
}

void print_checks(std::ostream& out, const std::vector<CheckResult>& checks) {
  std::size_t passed = 0;
  for (const auto& c : checks) {
    out << (c.passed ? "PASS " : "FAIL ") << std::left << std::setw(30) << c.name << std::right
        << " value=" << std::scientific << std::setprecision(3) << c.value
        << " tol=" << c.tolerance << std::defaultfloat;
    if (!c.detail.empty()) out << "  (" << c.detail << ")";
    out << "\n";
    passed += c.passed ? 1 : 0;
  }
  out << passed << "/" << checks.size() << " checks passed\n";
}

}  // namespace cvgrav::cli
