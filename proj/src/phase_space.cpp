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
#include "cvgrav/phase_space.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "cvgrav/error.hpp"
#include "cvgrav/linalg.hpp"
#include "cvgrav/parallel.hpp"

namespace cvgrav::phase_space {
namespace {

constexpr double kCoverageSigmas = 6.0;
constexpr double kStepsPerFeature = 8.0;
constexpr double kBoundaryDensity = 1e-12;

int odd_count(double length, double step) {
  int intervals = static_cast<int>(std::ceil(length / step - 1e-9));
  intervals = std::max(intervals, 2);
  if (intervals % 2 == 1) ++intervals;
  return intervals + 1;
}

void require_coverage(const GridSpec& spec, const GridSpec& needed, const char* what) {
  if (!spec.covers(needed.x_min, needed.x_max, needed.p_min, needed.p_max)) {
    throw GuardViolation(std::string(what) + ": grid extents [" + std::to_string(spec.x_min) +
                         ", " + std::to_string(spec.x_max) + "] x [" +
                         std::to_string(spec.p_min) + ", " + std::to_string(spec.p_max) +
                         "] do not cover the required box [" + std::to_string(needed.x_min) +
                         ", " + std::to_string(needed.x_max) + "] x [" +
                         std::to_string(needed.p_min) + ", " + std::to_string(needed.p_max) + "]");
  }
}

double reduce_weighted(const Eigen::MatrixXd& values, const Eigen::VectorXd& wx,
                       const Eigen::VectorXd& wp) {
  std::vector<double> rows(values.rows());
  std::vector<double> terms(values.cols());
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    for (Eigen::Index j = 0; j < values.cols(); ++j) terms[j] = wp(j) * values(i, j);
    rows[i] = wx(i) * linalg::pairwise_sum(terms);
  }
  return linalg::pairwise_sum(rows);
}

// Transform core shared by pure states and density matrices. correlation(x, ys)
// returns f(y_k) = <x + y_k|rho|x - y_k> for every y_k.
WignerGrid fock_transform(
    const GridSpec& spec, int cutoff,
    const std::function<Eigen::VectorXcd(double, const Eigen::VectorXd&)>& correlation) {
  spec.validate();
  // Hermite functions below the cutoff vanish beyond the turning point
  // sqrt(2N + 1) and carry momenta up to the same bound; the trapezoid step
  // keeps 2 pi / h above the full frequency content of f(y) e^{-2iPy}.
  const double turning = std::sqrt(2.0 * cutoff + 1.0);
  const double y_max = turning + 8.0;
  const double p_abs = std::max(std::abs(spec.p_min), std::abs(spec.p_max));
  const double h = 2.0 * M_PI / (2.0 * (turning + 8.0) + 2.0 * p_abs + 8.0);
  const int ny = static_cast<int>(std::ceil(y_max / h)) + 1;
  Eigen::VectorXd ys(ny);
  for (int k = 0; k < ny; ++k) ys(k) = k * h;

  Eigen::MatrixXd cos_table(spec.np, ny - 1);
  Eigen::MatrixXd sin_table(spec.np, ny - 1);
  for (int j = 0; j < spec.np; ++j) {
    for (int k = 1; k < ny; ++k) {
      const double phase = 2.0 * spec.p(j) * ys(k);
      cos_table(j, k - 1) = std::cos(phase);
      sin_table(j, k - 1) = std::sin(phase);
    }
  }

  WignerGrid out{spec, Eigen::MatrixXd(spec.nx, spec.np)};
  parallel_for(static_cast<std::size_t>(spec.nx), [&](std::size_t row) {
    const int i = static_cast<int>(row);
    const Eigen::VectorXcd f = correlation(spec.x(i), ys);
    const Eigen::VectorXd re = f.tail(ny - 1).real();
    const Eigen::VectorXd im = f.tail(ny - 1).imag();
    // int f(y) e^{-2iPy} dy with f(-y) = conj f(y).
    const Eigen::VectorXd integral =
        (f(0).real() + 2.0 * (cos_table * re + sin_table * im).array()).matrix() * h;
    out.values.row(i) = (2.0 / M_PI) * integral.transpose();
  });
  return out;
}

Eigen::MatrixXd hermite_table(int cutoff, double x, const Eigen::VectorXd& ys, double sign) {
  Eigen::MatrixXd table(cutoff, ys.size());
  for (Eigen::Index k = 0; k < ys.size(); ++k) {
    table.col(k) = fock::hermite_functions(cutoff, x + sign * ys(k));
  }
  return table;
}

}  // namespace

void GridSpec::validate() const {
  if (!(x_max > x_min) || !(p_max > p_min) || !std::isfinite(x_min) || !std::isfinite(x_max) ||
      !std::isfinite(p_min) || !std::isfinite(p_max)) {
    throw InvalidInput("grid extents must be finite with min < max");
  }
  if (nx < 3 || np < 3 || nx % 2 == 0 || np % 2 == 0) {
    throw InvalidInput("grid sample counts must be odd and at least 3");
  }
}

bool GridSpec::covers(double x_lo, double x_hi, double p_lo, double p_hi) const {
  constexpr double kSlack = 1e-9;
  return x_min <= x_lo + kSlack && x_max >= x_hi - kSlack && p_min <= p_lo + kSlack &&
         p_max >= p_hi - kSlack;
}

GridSpec GridSpec::fitted(double x_lo, double x_hi, double p_lo, double p_hi, double feature_x,
                          double feature_p) {
  GridSpec g;
  g.x_min = x_lo;
  g.x_max = x_hi;
  g.p_min = p_lo;
  g.p_max = p_hi;
  g.nx = odd_count(x_hi - x_lo, feature_x / kStepsPerFeature);
  g.np = odd_count(p_hi - p_lo, feature_p / kStepsPerFeature);
  g.validate();
  return g;
}

double WignerGrid::integral() const {
  return reduce_weighted(values, linalg::simpson_weights(spec.nx, spec.dx()),
                         linalg::simpson_weights(spec.np, spec.dp()));
}

double WignerGrid::purity() const {
  return 0.5 * M_PI *
         reduce_weighted(values.cwiseAbs2(), linalg::simpson_weights(spec.nx, spec.dx()),
                         linalg::simpson_weights(spec.np, spec.dp()));
}

Eigen::VectorXd WignerGrid::position_marginal() const {
  return 0.5 * values * linalg::simpson_weights(spec.np, spec.dp());
}

Eigen::VectorXd WignerGrid::momentum_marginal() const {
  return 0.5 * values.transpose() * linalg::simpson_weights(spec.nx, spec.dx());
}

WignerGrid sample(const GridSpec& spec, const std::function<double(double, double)>& f) {
  spec.validate();
  WignerGrid out{spec, Eigen::MatrixXd(spec.nx, spec.np)};
  parallel_for(static_cast<std::size_t>(spec.nx), [&](std::size_t row) {
    const int i = static_cast<int>(row);
    const double x = spec.x(i);
    for (int j = 0; j < spec.np; ++j) out.values(i, j) = f(x, spec.p(j));
  });
  return out;
}

double wigner_cat_at(const CatWignerParams& params, double x, double p) {
  const double rx = M_SQRT2 * params.alpha.real();
  const double rp = M_SQRT2 * params.alpha.imag();
  const double overlap = std::exp(-2.0 * std::norm(params.alpha));
  const double minus = (x - rx) * (x - rx) + (p - rp) * (p - rp);
  const double plus = (x + rx) * (x + rx) + (p + rp) * (p + rp);
  // r^T Omega r' with Omega = (0, 1; -1, 0).
  const double symplectic = x * rp - p * rx;
  const double fringe =
      2.0 * std::exp(-(x * x + p * p)) * std::cos(2.0 * symplectic - params.phi);
  return (std::exp(-minus) + std::exp(-plus) + fringe) /
         (M_PI * (1.0 + std::cos(params.phi) * overlap));
}

GridSpec cat_grid(const CatWignerParams& params) {
  const double hx = M_SQRT2 * std::abs(params.alpha.real()) + kCoverageSigmas;
  const double hp = M_SQRT2 * std::abs(params.alpha.imag()) + kCoverageSigmas;
  // Coherent humps have width 1/sqrt(2); fringes oscillate at 2 sqrt(2) |alpha|
  // along the axis conjugate to the branch separation.
  const double hump = M_SQRT1_2;
  const double kx = 2.0 * M_SQRT2 * std::abs(params.alpha.imag());
  const double kp = 2.0 * M_SQRT2 * std::abs(params.alpha.real());
  return GridSpec::fitted(-hx, hx, -hp, hp, kx > 0.0 ? std::min(hump, 1.0 / kx) : hump,
                          kp > 0.0 ? std::min(hump, 1.0 / kp) : hump);
}

WignerGrid wigner_cat(const CatWignerParams& params, const GridSpec& spec) {
  spec.validate();
  require_coverage(spec, cat_grid(params), "wigner_cat");
  if (std::cos(params.phi) * std::exp(-2.0 * std::norm(params.alpha)) <= -1.0 + 1e-14) {
    throw InvalidInput("wigner_cat: the superposition vanishes for these parameters");
  }
  return sample(spec, [&](double x, double p) { return wigner_cat_at(params, x, p); });
}

Eigen::Matrix2d SqueezedWignerParams::covariance() const {
  const double c = std::cosh(2.0 * r);
  const double s = std::sinh(2.0 * r);
  Eigen::Matrix2d sigma;
  sigma << c - s * std::cos(theta), -s * std::sin(theta), -s * std::sin(theta),
      c + s * std::cos(theta);
  return sigma;
}

double wigner_squeezed_at(const SqueezedWignerParams& params, double x, double p) {
  // det sigma = 1, so sigma^{-1} = (s_PP, -s_XP; -s_XP, s_XX).
  const Eigen::Matrix2d sigma = params.covariance();
  const double q = sigma(1, 1) * x * x - 2.0 * sigma(0, 1) * x * p + sigma(0, 0) * p * p;
  return (2.0 / M_PI) * std::exp(-q);
}

GridSpec squeezed_grid(const SqueezedWignerParams& params) {
  const Eigen::Matrix2d sigma = params.covariance();
  const double hx = kCoverageSigmas * std::sqrt(sigma(0, 0));
  const double hp = kCoverageSigmas * std::sqrt(sigma(1, 1));
  // Conditional widths 1 / sqrt(2 (sigma^{-1})_aa) set the finest structure.
  const double feature_x = 1.0 / std::sqrt(2.0 * sigma(1, 1));
  const double feature_p = 1.0 / std::sqrt(2.0 * sigma(0, 0));
  return GridSpec::fitted(-hx, hx, -hp, hp, feature_x, feature_p);
}

WignerGrid wigner_squeezed(const SqueezedWignerParams& params, const GridSpec& spec) {
  spec.validate();
  if (params.r < 0.0) {
    throw InvalidInput("wigner_squeezed: r must be nonnegative");
  }
  require_coverage(spec, squeezed_grid(params), "wigner_squeezed");
  return sample(spec, [&](double x, double p) { return wigner_squeezed_at(params, x, p); });
}

GridSpec squeezed_cat_grid(double alpha, const SqueezedWignerParams& squeeze) {
  const Eigen::Matrix2d sigma = squeeze.covariance();
  const double hx = M_SQRT2 * std::abs(alpha) + kCoverageSigmas * std::sqrt(sigma(0, 0));
  const double hp = kCoverageSigmas * std::sqrt(sigma(1, 1));
  const double feature_x = 1.0 / std::sqrt(2.0 * sigma(1, 1));
  double feature_p = 1.0 / std::sqrt(2.0 * sigma(0, 0));
  const double k = 2.0 * M_SQRT2 * std::abs(alpha);
  if (k > 0.0) feature_p = std::min(feature_p, 1.0 / k);
  return GridSpec::fitted(-hx, hx, -hp, hp, feature_x, feature_p);
}

WignerGrid displaced(const std::function<double(double, double)>& w, Complex gamma,
                     const GridSpec& spec) {
  const double sx = M_SQRT2 * gamma.real();
  const double sp = M_SQRT2 * gamma.imag();
  return sample(spec, [&](double x, double p) { return w(x - sx, p - sp); });
}

WignerGrid wigner_from_fock(const fock::FockVector& psi, const GridSpec& spec) {
  spec.validate();
  if (psi.guard_weight() >= fock::kTailTolerance) {
    throw GuardViolation("wigner_from_fock: state weight on the Fock guard band exceeds 1e-10");
  }
  for (double x : {spec.x_min, spec.x_max}) {
    if (std::norm(fock::position_wavefunction(psi, x)) > kBoundaryDensity) {
      throw GuardViolation("wigner_from_fock: position density at X = " + std::to_string(x) +
                           " exceeds 1e-12; widen the grid");
    }
  }
  for (double p : {spec.p_min, spec.p_max}) {
    if (std::norm(fock::momentum_wavefunction(psi, p)) > kBoundaryDensity) {
      throw GuardViolation("wigner_from_fock: momentum density at P = " + std::to_string(p) +
                           " exceeds 1e-12; widen the grid");
    }
  }
  const int n = psi.cutoff();
  const Eigen::VectorXcd& amps = psi.amplitudes();
  return fock_transform(spec, n, [&](double x, const Eigen::VectorXd& ys) {
    const Eigen::VectorXcd plus = hermite_table(n, x, ys, 1.0).transpose().cast<Complex>() * amps;
    const Eigen::VectorXcd minus = hermite_table(n, x, ys, -1.0).transpose().cast<Complex>() * amps;
    return Eigen::VectorXcd(plus.cwiseProduct(minus.conjugate()));
  });
}

WignerGrid wigner_from_fock(const Eigen::MatrixXcd& density, const GridSpec& spec) {
  spec.validate();
  if (density.rows() != density.cols() || density.rows() == 0) {
    throw InvalidInput("wigner_from_fock: density matrix must be square");
  }
  const int n = static_cast<int>(density.rows());
  const int g = fock::guard_band(n);
  if (density.diagonal().tail(g).real().sum() >= fock::kTailTolerance) {
    throw GuardViolation("wigner_from_fock: state weight on the Fock guard band exceeds 1e-10");
  }
  for (double x : {spec.x_min, spec.x_max}) {
    const Eigen::VectorXcd phi = fock::hermite_functions(n, x).cast<Complex>();
    if (std::abs(phi.dot(density * phi)) > kBoundaryDensity) {
      throw GuardViolation("wigner_from_fock: position density at X = " + std::to_string(x) +
                           " exceeds 1e-12; widen the grid");
    }
  }
  return fock_transform(spec, n, [&](double x, const Eigen::VectorXd& ys) {
    const Eigen::MatrixXcd plus = hermite_table(n, x, ys, 1.0).cast<Complex>();
    const Eigen::MatrixXcd minus = hermite_table(n, x, ys, -1.0).cast<Complex>();
    return Eigen::VectorXcd(plus.cwiseProduct(density * minus).colwise().sum().transpose());
  });
}

double overlap_grid(const WignerGrid& w1, const WignerGrid& w2) {
  if (!(w1.spec == w2.spec)) {
    throw InvalidInput("overlap_grid: grids differ in extents or resolution");
  }
  return 0.5 * M_PI * product(w1, w2).integral();
}

WignerGrid product(const WignerGrid& w1, const WignerGrid& w2) {
  if (!(w1.spec == w2.spec)) {
    throw InvalidInput("product: grids differ in extents or resolution");
  }
  return WignerGrid{w1.spec, w1.values.cwiseProduct(w2.values)};
}

}  // namespace cvgrav::phase_space
