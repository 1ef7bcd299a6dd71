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
#include <functional>

#include <Eigen/Dense>

#include "cvgrav/fock_space.hpp"

// Wigner functions W(X, P) = (2/pi) int dy e^{-2iPy} <X+y|rho|X-y>.
// In this normalisation int W dX dP = 2, the marginals carry a factor 1/2,
// and |<psi|phi>|^2 = (pi/2) int W_psi W_phi dX dP.
namespace cvgrav::phase_space {

using Complex = std::complex<double>;

/// Uniform rectangular sampling; both counts odd so composite Simpson applies.
struct GridSpec {
  double x_min = -6.0;
  double x_max = 6.0;
  double p_min = -6.0;
  double p_max = 6.0;
  int nx = 241;
  int np = 241;

  void validate() const;
  double dx() const { return (x_max - x_min) / (nx - 1); }
  double dp() const { return (p_max - p_min) / (np - 1); }
  double x(int i) const { return x_min + i * dx(); }
  double p(int j) const { return p_min + j * dp(); }
  bool covers(double x_lo, double x_hi, double p_lo, double p_hi) const;

  /// Smallest odd-count grid over the given box whose step is at most one
  /// eighth of the smallest feature length along each axis.
  static GridSpec fitted(double x_lo, double x_hi, double p_lo, double p_hi, double feature_x,
                         double feature_p);

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

struct WignerGrid {
  GridSpec spec;
  Eigen::MatrixXd values;  // values(i, j) = W(x(i), p(j))

  /// int W dX dP by 2-D composite Simpson (fixed-order reduction).
  double integral() const;
  /// (pi/2) int W^2; equals 1 for pure states.
  double purity() const;
  /// (1/2) int W dP at every x(i): the position density.
  Eigen::VectorXd position_marginal() const;
  /// (1/2) int W dX at every p(j): the momentum density.
  Eigen::VectorXd momentum_marginal() const;
};

/// Samples f(X, P) on a grid, rows in parallel. Each value depends only on
/// its own point, so the result is bit-identical for any thread count.
WignerGrid sample(const GridSpec& spec, const std::function<double(double, double)>& f);

struct CatWignerParams {
  Complex alpha = 2.5;
  double phi = 0.0;
};

/// Three-term closed form for C (|alpha> + e^{i phi} |-alpha>):
/// [e^{-|r - r'|^2} + e^{-|r + r'|^2} + 2 e^{-|r|^2} cos(2 r^T Omega r' - phi)]
/// / (pi (1 + cos(phi) e^{-2|alpha|^2})), with r' = sqrt(2) (Re alpha, Im alpha).
double wigner_cat_at(const CatWignerParams& params, double x, double p);
/// Box the grid must cover: sqrt(2)|Re alpha| + 6 in X, sqrt(2)|Im alpha| + 6 in P.
GridSpec cat_grid(const CatWignerParams& params);
/// Throws GuardViolation if the grid does not cover cat_grid's box.
WignerGrid wigner_cat(const CatWignerParams& params, const GridSpec& spec);

struct SqueezedWignerParams {
  double r = 0.0;
  double theta = 0.0;
  /// (cosh 2r - sinh 2r cos t, -sinh 2r sin t; -sinh 2r sin t, cosh 2r + sinh 2r cos t).
  Eigen::Matrix2d covariance() const;
};

double wigner_squeezed_at(const SqueezedWignerParams& params, double x, double p);
/// Coverage box: 6 sqrt(sigma_XX) in X and 6 sqrt(sigma_PP) in P.
GridSpec squeezed_grid(const SqueezedWignerParams& params);
WignerGrid wigner_squeezed(const SqueezedWignerParams& params, const GridSpec& spec);

/// Coverage box for (D(alpha) + D(-alpha)) S(xi)|0> with real alpha: branch
/// centres +-sqrt(2) alpha widened by 6 sqrt(sigma) of the squeezed vacuum.
/// Feature lengths take the tighter of the squeezed widths and the fringe
/// period along P.
GridSpec squeezed_cat_grid(double alpha, const SqueezedWignerParams& squeeze);

/// Wigner function of W evaluated at the point shifted by the displacement
/// D(gamma): W'(X, P) = W(X - sqrt(2) Re gamma, P - sqrt(2) Im gamma).
WignerGrid displaced(const std::function<double(double, double)>& w, Complex gamma,
                     const GridSpec& spec);

/// Numerical transform of a truncated-basis state through Hermite-function
/// position wavefunctions. Throws GuardViolation if the position or momentum
/// density exceeds 1e-12 on the grid boundary, or if the state carries
/// weight >= 1e-10 on the top guard band of its Fock basis.
WignerGrid wigner_from_fock(const fock::FockVector& psi, const GridSpec& spec);
/// Same transform for a single-mode density matrix.
WignerGrid wigner_from_fock(const Eigen::MatrixXcd& density, const GridSpec& spec);

/// (pi/2) int W1 W2 dX dP. Throws InvalidInput for mismatched grids.
double overlap_grid(const WignerGrid& w1, const WignerGrid& w2);

/// Pointwise product on a shared grid (the integrand of overlap_grid).
WignerGrid product(const WignerGrid& w1, const WignerGrid& w2);

}  // namespace cvgrav::phase_space
