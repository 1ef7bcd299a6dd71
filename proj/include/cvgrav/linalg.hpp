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

#include <span>

#include <Eigen/Dense>

namespace cvgrav::linalg {

/// Matrix exponential by scaling and squaring with a diagonal [6/6] Pade
/// approximant. Works for any square real or complex matrix.
Eigen::MatrixXd expm(const Eigen::MatrixXd& a);
Eigen::MatrixXcd expm(const Eigen::MatrixXcd& a);

/// Eigendecomposition H = U diag(eigenvalues) U^dagger of a Hermitian
/// tridiagonal matrix.
///
/// The matrix is given by its real diagonal and its complex subdiagonal
/// (sub[k] = H(k+1, k)). A diagonal phase transform maps it onto a real
/// symmetric tridiagonal matrix, so the solve is a real implicit-QL sweep.
struct TridiagonalSpectrum {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXcd eigenvectors;
};

TridiagonalSpectrum hermitian_tridiagonal_eigen(const Eigen::VectorXd& diag,
                                                const Eigen::VectorXcd& sub);

/// exp(-i t H) assembled from a spectral decomposition of H.
Eigen::MatrixXcd exp_minus_i(const TridiagonalSpectrum& spectrum, double t);

/// Fixed-order pairwise summation; the result does not depend on threading.
double pairwise_sum(std::span<const double> values);

/// Composite Simpson weights for n (odd) equally spaced samples with step h.
Eigen::VectorXd simpson_weights(int n, double h);

}  // namespace cvgrav::linalg
