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
#include "cvgrav/linalg.hpp"

#include <cmath>
#include <complex>

#include "cvgrav/error.hpp"

namespace cvgrav::linalg {
namespace {

constexpr int kPadeOrder = 6;
// [6/6] Pade coefficients c_k = (2m-k)! m! / ((2m)! k! (m-k)!).
constexpr double kPade[kPadeOrder + 1] = {
    1.0,
    1.0 / 2.0,
    5.0 / 44.0,
    1.0 / 66.0,
    1.0 / 792.0,
    1.0 / 15840.0,
    1.0 / 665280.0,
};
constexpr double kScaledNormBound = 0.25;

template <typename Matrix>
Matrix expm_impl(const Matrix& a) {
  if (a.rows() != a.cols()) {
    throw InvalidInput("expm: matrix must be square");
  }
  const Eigen::Index n = a.rows();
  const double norm = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > kScaledNormBound) {
    squarings = static_cast<int>(std::ceil(std::log2(norm / kScaledNormBound)));
  }
  const Matrix scaled = a / std::ldexp(1.0, squarings);

  const Matrix identity = Matrix::Identity(n, n);
  Matrix power = identity;
  Matrix even = kPade[0] * identity;
  Matrix odd = Matrix::Zero(n, n);
  for (int k = 1; k <= kPadeOrder; ++k) {
    power = power * scaled;
    if (k % 2 == 0) {
      even += kPade[k] * power;
    } else {
      odd += kPade[k] * power;
    }
  }
  // p(A) = even + odd, q(A) = even - odd.
  Matrix result = (even - odd).partialPivLu().solve(even + odd);
  for (int s = 0; s < squarings; ++s) {
    result = result * result;
  }
  return result;
}

}  // namespace

Eigen::MatrixXd expm(const Eigen::MatrixXd& a) { return expm_impl(a); }
Eigen::MatrixXcd expm(const Eigen::MatrixXcd& a) { return expm_impl(a); }

TridiagonalSpectrum hermitian_tridiagonal_eigen(const Eigen::VectorXd& diag,
                                                const Eigen::VectorXcd& sub) {
  const Eigen::Index n = diag.size();
  if (n == 0 || sub.size() != n - 1) {
    throw InvalidInput("hermitian_tridiagonal_eigen: inconsistent sizes");
  }
  // D^dagger H D has real nonnegative subdiagonal |sub[k]| when
  // u[k+1] = u[k] * sub[k] / |sub[k]|.
  Eigen::VectorXcd phases(n);
  Eigen::VectorXd real_sub(n > 1 ? n - 1 : 0);
  phases(0) = 1.0;
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    const double magnitude = std::abs(sub(k));
    real_sub(k) = magnitude;
    phases(k + 1) = magnitude > 0.0 ? phases(k) * (sub(k) / magnitude) : phases(k);
  }
  TridiagonalSpectrum out;
  if (n == 1) {
    out.eigenvalues = diag;
    out.eigenvectors = Eigen::MatrixXcd::Identity(1, 1);
    return out;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, real_sub, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw Error("hermitian_tridiagonal_eigen: eigensolver did not converge");
  }
  out.eigenvalues = solver.eigenvalues();
  out.eigenvectors = phases.asDiagonal() * solver.eigenvectors().cast<std::complex<double>>();
  return out;
}

Eigen::MatrixXcd exp_minus_i(const TridiagonalSpectrum& spectrum, double t) {
  const Eigen::Index n = spectrum.eigenvalues.size();
  Eigen::VectorXcd phase(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    phase(k) = std::polar(1.0, -t * spectrum.eigenvalues(k));
  }
  return spectrum.eigenvectors * phase.asDiagonal() * spectrum.eigenvectors.adjoint();
}

double pairwise_sum(std::span<const double> values) {
  constexpr std::size_t kLeaf = 16;
  if (values.size() <= kLeaf) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

Eigen::VectorXd simpson_weights(int n, double h) {
  if (n < 3 || n % 2 == 0) {
    throw InvalidInput("simpson_weights: sample count must be odd and >= 3");
  }
  Eigen::VectorXd w(n);
  for (int i = 0; i < n; ++i) {
    w(i) = (i == 0 || i == n - 1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
  }
  return w * (h / 3.0);
}

}  // namespace cvgrav::linalg
