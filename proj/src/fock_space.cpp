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
#include "cvgrav/fock_space.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "cvgrav/error.hpp"
#include "cvgrav/linalg.hpp"

namespace cvgrav::fock {
namespace {

constexpr Complex kI(0.0, 1.0);

void require_cutoff(int cutoff) {
  if (cutoff < 1) {
    throw InvalidInput("Fock cutoff must be positive");
  }
}

void require_coherent_rule(double abs_alpha, int cutoff, const char* what) {
  require_cutoff(cutoff);
  if (cutoff < coherent_cutoff(abs_alpha)) {
    throw GuardViolation(std::string(what) + ": cutoff " + std::to_string(cutoff) +
                         " below coherent tail rule ceil(|a|^2 + 8|a| + 16) = " +
                         std::to_string(coherent_cutoff(abs_alpha)));
  }
}

void require_squeeze_rule(double r, int cutoff, const char* what) {
  require_cutoff(cutoff);
  if (cutoff < squeeze_cutoff(r)) {
    throw GuardViolation(std::string(what) + ": cutoff " + std::to_string(cutoff) +
                         " below squeezing tail rule ceil(8 e^{2r}) = " +
                         std::to_string(squeeze_cutoff(r)));
  }
}

// Coherent-state amplitudes e^{-|a|^2/2} a^n / sqrt(n!) for n < length.
Eigen::VectorXcd coherent_series(Complex alpha, int length) {
  Eigen::VectorXcd c(length);
  c(0) = std::exp(-0.5 * std::norm(alpha));
  for (int n = 1; n < length; ++n) {
    c(n) = c(n - 1) * alpha / std::sqrt(static_cast<double>(n));
  }
  return c;
}

int series_length(double abs_alpha, int cutoff) {
  return cutoff + 4 * static_cast<int>(std::ceil(abs_alpha * abs_alpha)) + 200;
}

double tail_of(const Eigen::VectorXcd& extended, int cutoff, double total_norm2) {
  const Eigen::Index rest = extended.size() - cutoff;
  return extended.tail(rest).squaredNorm() / total_norm2;
}

// (V_A kron V_B) applied to every column of m (composite index i * nb + j).
Eigen::MatrixXcd kron_apply(const Eigen::MatrixXd& va, const Eigen::MatrixXd& vb,
                            const Eigen::MatrixXcd& m) {
  const Eigen::Index na = va.rows();
  const Eigen::Index nb = vb.rows();
  Eigen::MatrixXcd out(m.rows(), m.cols());
  const Eigen::MatrixXcd va_c = va.cast<Complex>();
  const Eigen::MatrixXcd vb_c = vb.cast<Complex>();
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    // Column-major map of a row-major (na x nb) block is its transpose.
    Eigen::Map<const Eigen::MatrixXcd> block_t(m.col(c).data(), nb, na);
    Eigen::Map<Eigen::MatrixXcd> out_t(out.col(c).data(), nb, na);
    out_t.noalias() = vb_c * block_t * va_c.transpose();
  }
  return out;
}

double guard_weight_rows(const Eigen::MatrixXd& populations, const std::vector<int>& rows) {
  double w = 0.0;
  for (int k : rows) w += populations.row(k).sum();
  return w;
}

Eigen::VectorXcd flatten(const Eigen::MatrixXcd& psi) {
  const Eigen::Index na = psi.rows();
  const Eigen::Index nb = psi.cols();
  Eigen::VectorXcd v(na * nb);
  for (Eigen::Index i = 0; i < na; ++i) {
    for (Eigen::Index j = 0; j < nb; ++j) v(i * nb + j) = psi(i, j);
  }
  return v;
}

}  // namespace

int guard_band(int cutoff) {
  return static_cast<int>(std::ceil(kGuardFraction * cutoff));
}

int coherent_cutoff(double abs_alpha) {
  return static_cast<int>(std::ceil(abs_alpha * abs_alpha + 8.0 * abs_alpha + 16.0));
}

int squeeze_cutoff(double r) {
  return static_cast<int>(std::ceil(8.0 * std::exp(2.0 * std::abs(r))));
}

FockVector::FockVector(Eigen::VectorXcd amplitudes, double tail_weight)
    : amplitudes_(std::move(amplitudes)), tail_weight_(tail_weight) {
  if (amplitudes_.size() == 0) {
    throw InvalidInput("FockVector: empty amplitude vector");
  }
  raw_norm_ = amplitudes_.norm();
  if (!(raw_norm_ > 0.0) || !std::isfinite(raw_norm_)) {
    throw InvalidInput("FockVector: amplitudes have zero or non-finite norm");
  }
  amplitudes_ /= raw_norm_;
}

double FockVector::guard_weight() const {
  const int g = guard_band(cutoff());
  return amplitudes_.tail(g).squaredNorm();
}

FockMatrix::FockMatrix(Eigen::MatrixXcd entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() == 0) {
    throw InvalidInput("FockMatrix: matrix must be square and non-empty");
  }
}

double FockMatrix::bulk_unitarity_error() const {
  const int bulk = cutoff() - guard_band(cutoff());
  if (bulk <= 0) return 0.0;
  const Eigen::MatrixXcd gram = entries_.adjoint() * entries_;
  return (gram.topLeftCorner(bulk, bulk) - Eigen::MatrixXcd::Identity(bulk, bulk))
      .cwiseAbs()
      .maxCoeff();
}

FockMatrix annihilation(int cutoff) {
  require_cutoff(cutoff);
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(cutoff, cutoff);
  for (int n = 1; n < cutoff; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return FockMatrix(a);
}

FockMatrix creation(int cutoff) {
  return FockMatrix(annihilation(cutoff).entries().adjoint());
}

FockMatrix position(int cutoff) {
  const Eigen::MatrixXcd a = annihilation(cutoff).entries();
  return FockMatrix((a + a.adjoint()) * M_SQRT1_2);
}

FockMatrix momentum(int cutoff) {
  const Eigen::MatrixXcd a = annihilation(cutoff).entries();
  return FockMatrix((a - a.adjoint()) * (-kI * M_SQRT1_2));
}

FockVector vacuum(int cutoff) {
  require_cutoff(cutoff);
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(cutoff);
  v(0) = 1.0;
  return FockVector(v);
}

FockVector coherent(Complex alpha, int cutoff) {
  require_coherent_rule(std::abs(alpha), cutoff, "coherent");
  const Eigen::VectorXcd extended = coherent_series(alpha, series_length(std::abs(alpha), cutoff));
  const double tail = tail_of(extended, cutoff, extended.squaredNorm());
  return FockVector(extended.head(cutoff), tail);
}

FockMatrix displacement_matrix(Complex gamma, int cutoff) {
  require_coherent_rule(std::abs(gamma), cutoff, "displacement_matrix");
  // D = exp(G) = exp(-i H) with H = i (g a^dagger - g^* a), H(n+1, n) = i g sqrt(n+1).
  const Eigen::VectorXd diag = Eigen::VectorXd::Zero(cutoff);
  Eigen::VectorXcd sub(cutoff - 1);
  for (int n = 0; n + 1 < cutoff; ++n) {
    sub(n) = kI * gamma * std::sqrt(static_cast<double>(n + 1));
  }
  return FockMatrix(linalg::exp_minus_i(linalg::hermitian_tridiagonal_eigen(diag, sub), 1.0));
}

FockMatrix squeeze_matrix(Complex xi, int cutoff) {
  require_squeeze_rule(std::abs(xi), cutoff, "squeeze_matrix");
  // H = i (xi^* a^2 - xi a^dagger^2) / 2 only couples n and n + 2, so each
  // parity sector is a Hermitian tridiagonal chain with
  // H(n+2, n) = -i xi sqrt((n+1)(n+2)) / 2.
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(cutoff, cutoff);
  for (int parity = 0; parity < 2; ++parity) {
    const int length = (cutoff - parity + 1) / 2;
    if (length <= 0) continue;
    Eigen::MatrixXcd block;
    if (length == 1) {
      block = Eigen::MatrixXcd::Identity(1, 1);
    } else {
      Eigen::VectorXcd sub(length - 1);
      for (int k = 0; k + 1 < length; ++k) {
        const double n = 2.0 * k + parity;
        sub(k) = -kI * xi * std::sqrt((n + 1.0) * (n + 2.0)) * 0.5;
      }
      block = linalg::exp_minus_i(
          linalg::hermitian_tridiagonal_eigen(Eigen::VectorXd::Zero(length), sub), 1.0);
    }
    for (int i = 0; i < length; ++i) {
      for (int j = 0; j < length; ++j) s(2 * i + parity, 2 * j + parity) = block(i, j);
    }
  }
  return FockMatrix(s);
}

FockVector squeezed_vacuum(Complex xi, int cutoff) {
  const FockMatrix s = squeeze_matrix(xi, cutoff);
  return FockVector(s.entries().col(0));
}

FockVector cat_state(double alpha, double phi, int cutoff) {
  if (!(alpha > 0.0)) {
    throw InvalidInput("cat_state: alpha must be positive");
  }
  require_coherent_rule(alpha, cutoff, "cat_state");
  Eigen::VectorXcd extended = coherent_series(alpha, series_length(alpha, cutoff));
  const Complex relative = std::polar(1.0, phi);
  for (Eigen::Index n = 0; n < extended.size(); ++n) {
    extended(n) *= (n % 2 == 0) ? 1.0 + relative : 1.0 - relative;
  }
  const double total = extended.squaredNorm();
  if (!(total > 0.0)) {
    throw InvalidInput("cat_state: superposition vanishes");
  }
  return FockVector(extended.head(cutoff), tail_of(extended, cutoff, total));
}

double cat_normalization(double alpha, double phi) {
  return 1.0 / std::sqrt(2.0 + 2.0 * std::cos(phi) * std::exp(-2.0 * alpha * alpha));
}

FockVector squeezed_cat(double alpha, Complex xi, int cutoff) {
  if (!(alpha > 0.0)) {
    throw InvalidInput("squeezed_cat: alpha must be positive");
  }
  require_coherent_rule(alpha, cutoff, "squeezed_cat");
  const FockVector squeezed = squeezed_vacuum(xi, cutoff);
  // S(xi)|0> is parity-even and D(-alpha) = Pi D(alpha) Pi, also for the
  // truncated generator, so the second branch is the parity image of the first.
  Eigen::VectorXcd branches = displacement_matrix(alpha, cutoff) * squeezed;
  for (int n = 0; n < cutoff; ++n) branches(n) *= (n % 2 == 0) ? 2.0 : 0.0;
  return FockVector(branches);
}

FockVector squeezed_cat_auto(double alpha, Complex xi, int max_cutoff) {
  int cutoff = std::max(coherent_cutoff(alpha), squeeze_cutoff(std::abs(xi)));
  if (cutoff > max_cutoff) {
    throw GuardViolation("squeezed_cat_auto: tail rules need cutoff " + std::to_string(cutoff) +
                         " above the maximum " + std::to_string(max_cutoff));
  }
  while (true) {
    FockVector psi = squeezed_cat(alpha, xi, cutoff);
    if (psi.guard_weight() < kTailTolerance) return psi;
    if (cutoff >= max_cutoff) {
      throw GuardViolation("squeezed_cat_auto: guard weight " + format_weight(psi.guard_weight()) +
                           " at the maximum cutoff " + std::to_string(max_cutoff));
    }
    cutoff = std::min(max_cutoff, static_cast<int>(std::ceil(1.25 * cutoff)));
  }
}

double squeezed_cat_normalization(double alpha, Complex xi) {
  const double r = std::abs(xi);
  const Complex phase = std::polar(1.0, std::arg(xi));
  const double v2 = std::norm(std::cosh(r) + std::sinh(r) * phase);
  return std::sqrt(2.0 * (1.0 + std::exp(-2.0 * alpha * alpha * v2)));
}

Complex inner_product(const FockVector& bra, const FockVector& ket) {
  return inner_product(bra, ket.amplitudes());
}

Complex inner_product(const FockVector& bra, const Eigen::VectorXcd& ket) {
  if (bra.cutoff() != ket.size()) {
    throw InvalidInput("inner_product: cutoff mismatch");
  }
  return bra.amplitudes().dot(ket);
}

Complex expectation(const FockVector& psi, const FockMatrix& op) {
  if (psi.cutoff() != op.cutoff()) {
    throw InvalidInput("expectation: cutoff mismatch");
  }
  return psi.amplitudes().dot(op.entries() * psi.amplitudes());
}

QuadratureMoments quadrature_moments(const FockVector& psi) {
  const int n = psi.cutoff();
  const Eigen::MatrixXcd x = position(n).entries();
  const Eigen::MatrixXcd p = momentum(n).entries();
  const Eigen::VectorXcd& v = psi.amplitudes();
  const Eigen::VectorXcd xv = x * v;
  const Eigen::VectorXcd pv = p * v;
  const double mx = v.dot(xv).real();
  const double mp = v.dot(pv).real();
  QuadratureMoments m;
  m.mean = Eigen::Vector2d(mx, mp);
  m.sigma(0, 0) = 2.0 * (xv.squaredNorm() - mx * mx);
  m.sigma(1, 1) = 2.0 * (pv.squaredNorm() - mp * mp);
  // <XP + PX> = 2 Re <Xv, Pv>.
  m.sigma(0, 1) = m.sigma(1, 0) = 2.0 * xv.dot(pv).real() - 2.0 * mx * mp;
  return m;
}

Eigen::VectorXd hermite_functions(int cutoff, double x) {
  require_cutoff(cutoff);
  constexpr double kRescale = 1e100;
  const double log_rescale = std::log(kRescale);
  Eigen::VectorXd out(cutoff);
  double log_scale = -0.5 * x * x - 0.25 * std::log(M_PI);
  double prev = 0.0;
  double cur = 1.0;
  auto emit = [&](int n, double scaled) {
    out(n) = scaled == 0.0 ? 0.0
                           : std::copysign(std::exp(std::log(std::abs(scaled)) + log_scale), scaled);
  };
  emit(0, cur);
  for (int n = 0; n + 1 < cutoff; ++n) {
    const double next = std::sqrt(2.0 / (n + 1.0)) * x * cur - std::sqrt(n / (n + 1.0)) * prev;
    prev = cur;
    cur = next;
    if (std::abs(cur) > kRescale) {
      cur /= kRescale;
      prev /= kRescale;
      log_scale += log_rescale;
    }
    emit(n + 1, cur);
  }
  return out;
}

Complex position_wavefunction(const FockVector& psi, double x) {
  const Eigen::VectorXd phi = hermite_functions(psi.cutoff(), x);
  return phi.cast<Complex>().dot(psi.amplitudes());
}

Complex momentum_wavefunction(const FockVector& psi, double p) {
  const Eigen::VectorXd phi = hermite_functions(psi.cutoff(), p);
  Complex sum = 0.0;
  Complex phase = 1.0;
  for (int n = 0; n < psi.cutoff(); ++n) {
    sum += phase * phi(n) * psi[n];
    phase *= -kI;
  }
  return sum;
}

std::vector<int> PositionSpectrum::guard_indices() const {
  const int n = static_cast<int>(values.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return std::abs(values(a)) > std::abs(values(b)); });
  order.resize(guard_band(n));
  return order;
}

PositionSpectrum position_spectrum(int cutoff) {
  require_cutoff(cutoff);
  PositionSpectrum s;
  if (cutoff == 1) {
    s.values = Eigen::VectorXd::Zero(1);
    s.vectors = Eigen::MatrixXd::Identity(1, 1);
    return s;
  }
  Eigen::VectorXd sub(cutoff - 1);
  for (int n = 0; n + 1 < cutoff; ++n) sub(n) = std::sqrt((n + 1.0) / 2.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(Eigen::VectorXd::Zero(cutoff), sub, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw Error("position_spectrum: eigensolver did not converge");
  }
  s.values = solver.eigenvalues();
  s.vectors = solver.eigenvectors();
  return s;
}

BipartiteFockState BipartiteFockState::product(const FockVector& a, const FockVector& b) {
  return pure(a.amplitudes() * b.amplitudes().transpose());
}

BipartiteFockState BipartiteFockState::pure(Eigen::MatrixXcd amplitudes) {
  const double norm = amplitudes.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw InvalidInput("BipartiteFockState: amplitudes have zero or non-finite norm");
  }
  BipartiteFockState s;
  s.cutoff_a_ = static_cast<int>(amplitudes.rows());
  s.cutoff_b_ = static_cast<int>(amplitudes.cols());
  s.pure_ = true;
  s.amplitudes_ = amplitudes / norm;
  return s;
}

BipartiteFockState BipartiteFockState::mixed(Eigen::MatrixXcd density, int cutoff_a,
                                             int cutoff_b) {
  require_cutoff(cutoff_a);
  require_cutoff(cutoff_b);
  const Eigen::Index dim = static_cast<Eigen::Index>(cutoff_a) * cutoff_b;
  if (density.rows() != dim || density.cols() != dim) {
    throw InvalidInput("BipartiteFockState: density dimension does not match cutoffs");
  }
  if ((density - density.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
    throw PhysicalityError("BipartiteFockState: density matrix is not Hermitian");
  }
  if (std::abs(density.trace() - 1.0) > 1e-10) {
    throw PhysicalityError("BipartiteFockState: density matrix trace differs from 1");
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(density, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -1e-10) {
    throw PhysicalityError("BipartiteFockState: density matrix has negative eigenvalues");
  }
  BipartiteFockState s;
  s.cutoff_a_ = cutoff_a;
  s.cutoff_b_ = cutoff_b;
  s.pure_ = false;
  s.density_ = 0.5 * (density + density.adjoint());
  return s;
}

const Eigen::MatrixXcd& BipartiteFockState::amplitudes() const {
  if (!pure_) {
    throw InvalidInput("BipartiteFockState: mixed state has no amplitude matrix");
  }
  return amplitudes_;
}

Eigen::MatrixXcd BipartiteFockState::density() const {
  if (!pure_) return density_;
  const Eigen::VectorXcd v = flatten(amplitudes_);
  return v * v.adjoint();
}

Eigen::MatrixXcd BipartiteFockState::reduced_a() const {
  if (pure_) return amplitudes_ * amplitudes_.adjoint();
  Eigen::MatrixXcd r = Eigen::MatrixXcd::Zero(cutoff_a_, cutoff_a_);
  for (int i = 0; i < cutoff_a_; ++i)
    for (int k = 0; k < cutoff_a_; ++k)
      for (int j = 0; j < cutoff_b_; ++j) r(i, k) += density_(i * cutoff_b_ + j, k * cutoff_b_ + j);
  return r;
}

Eigen::MatrixXcd BipartiteFockState::reduced_b() const {
  if (pure_) return (amplitudes_.adjoint() * amplitudes_).transpose();
  Eigen::MatrixXcd r = Eigen::MatrixXcd::Zero(cutoff_b_, cutoff_b_);
  for (int j = 0; j < cutoff_b_; ++j)
    for (int l = 0; l < cutoff_b_; ++l)
      for (int i = 0; i < cutoff_a_; ++i) r(j, l) += density_(i * cutoff_b_ + j, i * cutoff_b_ + l);
  return r;
}

BipartiteFockState evolve_bilinear(const BipartiteFockState& state, double theta) {
  const PositionSpectrum sa = position_spectrum(state.cutoff_a());
  const PositionSpectrum sb = position_spectrum(state.cutoff_b());
  const int na = state.cutoff_a();
  const int nb = state.cutoff_b();

  Eigen::MatrixXcd phase(na, nb);
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j) phase(i, j) = std::polar(1.0, -theta * sa.values(i) * sb.values(j));

  auto check_guard = [&](const Eigen::MatrixXd& pop_a, const Eigen::MatrixXd& pop_b) {
    const double wa = guard_weight_rows(pop_a, sa.guard_indices());
    const double wb = guard_weight_rows(pop_b, sb.guard_indices());
    if (wa >= kTailTolerance || wb >= kTailTolerance) {
      throw GuardViolation("evolve_bilinear: state weight " + format_weight(std::max(wa, wb)) +
                           " on the guard band of truncated X exceeds 1e-10; raise the cutoff");
    }
  };

  if (state.is_pure()) {
    const Eigen::MatrixXcd va = sa.vectors.cast<Complex>();
    const Eigen::MatrixXcd vb = sb.vectors.cast<Complex>();
    const Eigen::MatrixXcd in_eigenbasis = va.transpose() * state.amplitudes() * vb;
    const Eigen::MatrixXd populations = in_eigenbasis.cwiseAbs2();
    check_guard(populations, populations.transpose());
    const Eigen::MatrixXcd rotated = in_eigenbasis.cwiseProduct(phase);
    return BipartiteFockState::pure(va * rotated * vb.transpose());
  }

  const Eigen::MatrixXd vat = sa.vectors.transpose();
  const Eigen::MatrixXd vbt = sb.vectors.transpose();
  // W^T rho W with W = V_A kron V_B (real).
  const Eigen::MatrixXcd left = kron_apply(vat, vbt, state.density());
  Eigen::MatrixXcd in_eigenbasis = kron_apply(vat, vbt, left.transpose()).transpose();

  Eigen::MatrixXd pop_a = Eigen::MatrixXd::Zero(na, 1);
  Eigen::MatrixXd pop_b = Eigen::MatrixXd::Zero(nb, 1);
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j) {
      const double p = in_eigenbasis(i * nb + j, i * nb + j).real();
      pop_a(i, 0) += p;
      pop_b(j, 0) += p;
    }
  check_guard(pop_a, pop_b);

  const Eigen::VectorXcd phase_flat = flatten(phase);
  in_eigenbasis = phase_flat.asDiagonal() * in_eigenbasis * phase_flat.conjugate().asDiagonal();
  const Eigen::MatrixXcd back_left = kron_apply(sa.vectors, sb.vectors, in_eigenbasis);
  Eigen::MatrixXcd rho = kron_apply(sa.vectors, sb.vectors, back_left.transpose()).transpose();
  rho = 0.5 * (rho + rho.adjoint());
  rho /= rho.trace().real();
  return BipartiteFockState::mixed(rho, na, nb);
}

BipartiteFockState evolve_bilinear(const FockVector& a, const FockVector& b, double theta) {
  return evolve_bilinear(BipartiteFockState::product(a, b), theta);
}

Eigen::MatrixXcd partial_transpose_b(const Eigen::MatrixXcd& density, int cutoff_a, int cutoff_b) {
  const Eigen::Index dim = static_cast<Eigen::Index>(cutoff_a) * cutoff_b;
  if (density.rows() != dim || density.cols() != dim) {
    throw InvalidInput("partial_transpose_b: dimension does not match cutoffs");
  }
  Eigen::MatrixXcd out(dim, dim);
  for (int i = 0; i < cutoff_a; ++i)
    for (int j = 0; j < cutoff_b; ++j)
      for (int k = 0; k < cutoff_a; ++k)
        for (int l = 0; l < cutoff_b; ++l)
          out(i * cutoff_b + j, k * cutoff_b + l) = density(i * cutoff_b + l, k * cutoff_b + j);
  return out;
}

double trace_norm(const Eigen::MatrixXcd& hermitian) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(hermitian, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) {
    throw Error("trace_norm: eigensolver did not converge");
  }
  std::vector<double> moduli(eig.eigenvalues().size());
  for (std::size_t k = 0; k < moduli.size(); ++k) moduli[k] = std::abs(eig.eigenvalues()(k));
  return linalg::pairwise_sum(moduli);
}

double log_negativity_fock(const BipartiteFockState& state) {
  const int na = state.cutoff_a();
  const int nb = state.cutoff_b();
  if (state.is_pure()) {
    // Pure states: ||rho^{Gamma_B}||_1 = (sum of Schmidt coefficients)^2.
    const Eigen::BDCSVD<Eigen::MatrixXcd> svd(state.amplitudes());
    const double sum = svd.singularValues().sum();
    return std::max(0.0, 2.0 * std::log2(sum));
  }
  const Eigen::MatrixXcd transposed = partial_transpose_b(state.density(), na, nb);
  return std::max(0.0, std::log2(trace_norm(transposed)));
}

}  // namespace cvgrav::fock
