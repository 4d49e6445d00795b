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

#include "irsug/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace irsug {

CMatrix hermitian_part(const CMatrix& a) {
  if (a.rows() != a.cols()) throw ShapeMismatch("hermitian_part: matrix is not square");
  CMatrix h = 0.5 * (a + a.adjoint());
  for (Eigen::Index i = 0; i < h.rows(); ++i) h(i, i) = Complex(h(i, i).real(), 0.0);
  return h;
}

bool all_finite(const CMatrix& a) {
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag())) return false;
  return true;
}

CVector canonical_phase(const CVector& v) {
  if (v.size() == 0) return v;
  Eigen::Index best = 0;
  double best_abs = -1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    // Strict comparison with a small margin keeps the pick stable under
    // round-off when two entries tie.
    const double m = std::abs(v(i));
    if (m > best_abs * (1.0 + 1e-12)) {
      best_abs = m;
      best = i;
    }
  }
  if (best_abs <= 0.0) return v;
  const Complex rot = std::conj(v(best)) / best_abs;
  CVector out = v * rot;
  out(best) = Complex(std::abs(out(best)), 0.0);
  return out;
}

EigenDecomposition eig_hermitian(const CMatrix& a) {
  if (a.rows() != a.cols() || a.rows() == 0)
    throw InvalidInput("eig_hermitian: expected a non-empty square matrix");
  if (!all_finite(a)) throw InvalidInput("eig_hermitian: non-finite entries");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(a));
  if (es.info() != Eigen::Success) throw InvalidInput("eig_hermitian: decomposition failed");
  const Eigen::Index n = a.rows();
  EigenDecomposition out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.values(i) = es.eigenvalues()(n - 1 - i);
    out.vectors.col(i) = canonical_phase(es.eigenvectors().col(n - 1 - i));
  }
  return out;
}

SpectralTop spectral_norm_top(const CMatrix& a, bool psd_hint) {
  const auto ed = eig_hermitian(a);
  const Eigen::Index n = ed.values.size();
  SpectralTop out;
  out.norm = psd_hint ? ed.values(0) : std::max(std::abs(ed.values(0)), std::abs(ed.values(n - 1)));
  Eigen::Index pick = 0;
  if (!psd_hint && std::abs(ed.values(n - 1)) > std::abs(ed.values(0))) pick = n - 1;
  if (out.norm == 0.0) {
    out.vector = CVector::Zero(n);
    out.vector(0) = 1.0;
    return out;
  }
  out.vector = ed.vectors.col(pick);
  out.vector /= out.vector.norm();
  return out;
}

Rank1Factor rank1_factor(const CMatrix& a, double tol) {
  const auto ed = eig_hermitian(a);
  const Eigen::Index n = ed.values.size();
  const double lmax = ed.values(0);
  const double lmin = ed.values(n - 1);
  const double scale = std::max({std::abs(lmax), a.trace().real(), 0.0});
  if (lmin < -tol * scale) throw NotPsd("rank1_factor: matrix has a negative eigenvalue below -tol");
  Rank1Factor out;
  if (lmax <= 0.0) {
    out.w = CVector::Zero(n);
    out.residual_ratio = 0.0;
    out.near_rank_one = true;
    return out;
  }
  out.w = std::sqrt(lmax) * ed.vectors.col(0);
  out.residual_ratio = n > 1 ? std::max(ed.values(1), 0.0) / lmax : 0.0;
  out.near_rank_one = out.residual_ratio <= tol;
  return out;
}

double hermitian_asymmetry(const CMatrix& a) {
  const double m = a.cwiseAbs().maxCoeff();
  if (m == 0.0) return 0.0;
  return (a - a.adjoint()).cwiseAbs().maxCoeff() / m;
}

double min_eigenvalue(const CMatrix& a) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(a), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

}  // namespace irsug
