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

#include <Eigen/Dense>

// Truncated number-basis representation (hbar = 1, a = (X + iP)/sqrt(2)).
//
// Displacements follow D(g) = exp(g a^dagger - g^* a), which moves the Wigner
// function to W(X - sqrt(2) Re g, P - sqrt(2) Im g). Squeezing follows
// S(xi) = exp((xi^* a^2 - xi a^dagger^2) / 2).
//
// Matrices are exact exponentials of truncated generators. Their top guard
// band (ceil(0.1 N) levels, or the 10% of truncated X eigenpairs with the
// largest |x|) carries no accuracy claim; states must keep their weight
// there below 1e-10.
namespace cvgrav::fock {

using Complex = std::complex<double>;

inline constexpr double kTailTolerance = 1e-10;
inline constexpr double kGuardFraction = 0.1;

int guard_band(int cutoff);
/// ceil(|alpha|^2 + 8|alpha| + 16): Poisson tail rule for coherent content.
int coherent_cutoff(double abs_alpha);
/// ceil(8 e^{2r}): tail rule for squeezed content.
int squeeze_cutoff(double r);

class FockVector {
 public:
  /// Normalises the amplitudes. raw_norm records the norm before
  /// normalisation; tail_weight the probability lost to truncation.
  explicit FockVector(Eigen::VectorXcd amplitudes, double tail_weight = 0.0);

  int cutoff() const { return static_cast<int>(amplitudes_.size()); }
  const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }
  Complex operator[](int n) const { return amplitudes_(n); }
  double tail_weight() const { return tail_weight_; }
  double raw_norm() const { return raw_norm_; }
  /// Probability on the top guard band of number states.
  double guard_weight() const;

 private:
  Eigen::VectorXcd amplitudes_;
  double tail_weight_ = 0.0;
  double raw_norm_ = 1.0;
};

class FockMatrix {
 public:
  explicit FockMatrix(Eigen::MatrixXcd entries);

  int cutoff() const { return static_cast<int>(entries_.rows()); }
  const Eigen::MatrixXcd& entries() const { return entries_; }

  /// max |(U^dagger U - I)_ij| over i, j below the guard band.
  double bulk_unitarity_error() const;

  Eigen::VectorXcd operator*(const FockVector& v) const { return entries_ * v.amplitudes(); }
  FockMatrix operator*(const FockMatrix& other) const {
    return FockMatrix(entries_ * other.entries_);
  }

 private:
  Eigen::MatrixXcd entries_;
};

FockMatrix annihilation(int cutoff);
FockMatrix creation(int cutoff);
FockMatrix position(int cutoff);
FockMatrix momentum(int cutoff);

FockVector vacuum(int cutoff);
FockVector coherent(Complex alpha, int cutoff);
FockMatrix displacement_matrix(Complex gamma, int cutoff);
FockMatrix squeeze_matrix(Complex xi, int cutoff);
FockVector squeezed_vacuum(Complex xi, int cutoff);

/// C (|alpha> + e^{i phi} |-alpha>), alpha > 0.
FockVector cat_state(double alpha, double phi, int cutoff);
double cat_normalization(double alpha, double phi);

/// (D(alpha) + D(-alpha)) S(xi) |0> / N, alpha > 0. raw_norm() is the numeric N.
FockVector squeezed_cat(double alpha, Complex xi, int cutoff);
/// squeezed_cat on the cutoff ladder N_{k+1} = ceil(1.25 N_k), starting from
/// the larger of the coherent and squeeze rules, stopping at the first N whose
/// guard-band weight is below 1e-10. Throws GuardViolation past max_cutoff.
FockVector squeezed_cat_auto(double alpha, Complex xi, int max_cutoff = 2048);
/// N = sqrt(2 (1 + exp(-2 alpha^2 |cosh r + sinh r e^{i theta}|^2))).
double squeezed_cat_normalization(double alpha, Complex xi);

Complex inner_product(const FockVector& bra, const FockVector& ket);
Complex inner_product(const FockVector& bra, const Eigen::VectorXcd& ket);
Complex expectation(const FockVector& psi, const FockMatrix& op);

/// Single-mode first and second moments in the sigma = 2 Cov convention.
struct QuadratureMoments {
  Eigen::Vector2d mean;
  Eigen::Matrix2d sigma;
  double delta_X() const { return std::sqrt(0.5 * sigma(0, 0)); }
};
QuadratureMoments quadrature_moments(const FockVector& psi);

/// Harmonic-oscillator eigenfunctions phi_0..phi_{cutoff-1} at x, via the
/// normalised three-term recurrence with running rescaling (no factorials,
/// no underflow of e^{-x^2/2} before the recurrence starts).
Eigen::VectorXd hermite_functions(int cutoff, double x);
Complex position_wavefunction(const FockVector& psi, double x);
/// Momentum-space amplitude; phi_n has Fourier transform (-i)^n phi_n.
Complex momentum_wavefunction(const FockVector& psi, double p);

/// Eigenpairs of the truncated position operator, x ascending.
struct PositionSpectrum {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
  /// Indices of the guard-band eigenpairs (largest |x|).
  std::vector<int> guard_indices() const;
};
PositionSpectrum position_spectrum(int cutoff);

/// Two-mode state; pure states keep their amplitude matrix Psi(i, j) with
/// i indexing mode A. Composite index is i * cutoff_b + j.
class BipartiteFockState {
 public:
  static BipartiteFockState product(const FockVector& a, const FockVector& b);
  /// Normalises amplitudes (rows: A, columns: B).
  static BipartiteFockState pure(Eigen::MatrixXcd amplitudes);
  /// Validates trace (1e-10), hermiticity (1e-12) and positivity (-1e-10).
  static BipartiteFockState mixed(Eigen::MatrixXcd density, int cutoff_a, int cutoff_b);

  int cutoff_a() const { return cutoff_a_; }
  int cutoff_b() const { return cutoff_b_; }
  bool is_pure() const { return pure_; }
  const Eigen::MatrixXcd& amplitudes() const;
  Eigen::MatrixXcd density() const;
  Eigen::MatrixXcd reduced_a() const;
  Eigen::MatrixXcd reduced_b() const;

 private:
  BipartiteFockState() = default;
  int cutoff_a_ = 0;
  int cutoff_b_ = 0;
  bool pure_ = true;
  Eigen::MatrixXcd amplitudes_;
  Eigen::MatrixXcd density_;
};

/// Applies U = exp(-i theta X_A X_B) through the per-mode eigendecomposition
/// X = V diag(x) V^T. Throws GuardViolation if either mode puts weight
/// >= 1e-10 on the guard-band eigenpairs of its truncated X.
BipartiteFockState evolve_bilinear(const BipartiteFockState& state, double theta);
BipartiteFockState evolve_bilinear(const FockVector& a, const FockVector& b, double theta);

/// rho^{Gamma_B}_{(i,j),(k,l)} = rho_{(i,l),(k,j)}.
Eigen::MatrixXcd partial_transpose_b(const Eigen::MatrixXcd& density, int cutoff_a, int cutoff_b);
/// Sum of |eigenvalues| of a Hermitian matrix (full eigendecomposition).
double trace_norm(const Eigen::MatrixXcd& hermitian);
/// E_N = log2 || rho^{Gamma_B} ||_1, clamped at zero.
double log_negativity_fock(const BipartiteFockState& state);

}  // namespace cvgrav::fock
