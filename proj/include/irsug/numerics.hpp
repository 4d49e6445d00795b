// SPDX-License-Identifier: Apache-2.0
//
// irsug: joint user grouping and resource allocation for IRS-aided SWIPT
// Copyright (C) 2026 The irsug Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace irsug {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

// Error hierarchy shared by all modules. Solvers report recoverable
// conditions through status codes; these are for contract violations.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

class NotPsd : public Error {
 public:
  using Error::Error;
};

class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

/// Returns (A + A^H) / 2. Every exported matrix-valued operation passes its
/// result through this so Hermitian symmetry is exact.
CMatrix hermitian_part(const CMatrix& a);

bool all_finite(const CMatrix& a);

/// Rotates `v` by a unit-modulus scalar so that its largest-magnitude entry
/// is real and nonnegative.
CVector canonical_phase(const CVector& v);

struct EigenDecomposition {
  RVector values;   // descending
  CMatrix vectors;  // columns, unitary, canonical phase
};

/// Eigen-decomposition of a Hermitian matrix with eigenvalues sorted in
/// descending order. Throws InvalidInput on non-finite entries.
EigenDecomposition eig_hermitian(const CMatrix& a);

struct SpectralTop {
  double norm = 0.0;
  CVector vector;
};

/// Spectral norm and the matching unit eigenvector. With `psd_hint` the
/// largest (rather than largest-magnitude) eigenvalue is used. The zero
/// matrix yields norm 0 and the first standard basis vector.
SpectralTop spectral_norm_top(const CMatrix& a, bool psd_hint = false);

struct Rank1Factor {
  CVector w;                    // sqrt(lambda_1) * u_1
  double residual_ratio = 0.0;  // lambda_2 / lambda_1 (0 for rank <= 1)
  bool near_rank_one = true;    // residual_ratio <= tol
};

/// Dominant rank-one factor of a PSD matrix. Throws NotPsd when the smallest
/// eigenvalue is below -tol times the matrix scale.
Rank1Factor rank1_factor(const CMatrix& a, double tol = 1e-9);

/// Largest absolute deviation from Hermitian symmetry relative to max |a_ij|.
double hermitian_asymmetry(const CMatrix& a);

/// Smallest eigenvalue of a Hermitian matrix.
double min_eigenvalue(const CMatrix& a);

}  // namespace irsug
