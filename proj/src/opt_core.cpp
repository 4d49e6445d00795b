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

#include "irsug/opt_core.hpp"

#include <cmath>
#include <numbers>

namespace irsug {

double penalty_h(const RMatrix& a) {
  double h = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      const double x = a(i, j);
      if (!(x >= -1e-9 && x <= 1.0 + 1e-9)) throw InvalidInput("penalty_h: entry outside [0, 1]");
      h += x - x * x;
    }
  return h;
}

double chi_lb(double a, double a_r) { return -a_r * a_r + 2.0 * a_r * a; }

double h_ub(const RMatrix& a, const RMatrix& a_r) {
  if (a.rows() != a_r.rows() || a.cols() != a_r.cols()) throw ShapeMismatch("h_ub: shape mismatch");
  double h = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i) h += a(i, j) - chi_lb(a(i, j), a_r(i, j));
  return h;
}

double interference(int k, const std::vector<CMatrix>& S_slot, const CMatrix& S_E, const CMatrix& X) {
  double I = S_E.size() ? (X * S_E).trace().real() : 0.0;
  for (std::size_t i = 0; i < S_slot.size(); ++i)
    if (static_cast<int>(i) != k && S_slot[i].size()) I += (X * S_slot[i]).trace().real();
  return I;
}

double g_concave(double I, double tau, double sigma2) {
  if (!(tau > 0.0)) throw DomainError("g_concave: tau must be positive");
  return tau * std::log2(I / tau + sigma2);
}

GSurrogate g_ub(double I_r, double tau_r, double sigma2) {
  if (!(tau_r > 0.0)) throw DomainError("g_ub: tau_r must be positive");
  GSurrogate g;
  g.I_r = I_r;
  g.tau_r = tau_r;
  const double ups = std::max(I_r / tau_r + sigma2, sigma2);
  g.value_r = tau_r * std::log2(ups);
  g.dI = 1.0 / (ups * std::numbers::ln2);
  g.dtau = std::log2(ups) - (ups - sigma2) / (ups * std::numbers::ln2);
  return g;
}

double penalty_q(const std::vector<CMatrix>& set) {
  double q = 0.0;
  for (const auto& S : set) {
    if (S.size() == 0) continue;
    const auto ed = eig_hermitian(S);
    const double scale = std::max(std::abs(ed.values(0)), 0.0);
    if (ed.values(ed.values.size() - 1) < -1e-9 * std::max(scale, S.trace().real()))
      throw NotPsd("penalty_q: matrix is not PSD");
    // Sum of the non-dominant eigenvalues; round-off level values count as zero.
    const double floor = 1e-12 * scale;
    for (Eigen::Index i = 1; i < ed.values.size(); ++i)
      if (ed.values(i) > floor) q += ed.values(i);
  }
  return q;
}

double QSurrogate::operator()(const std::vector<CMatrix>& set) const {
  if (set.size() != top.size()) throw ShapeMismatch("q_ub: set size mismatch");
  double q = 0.0;
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (set[i].size() == 0) continue;
    q += set[i].trace().real() - top[i].dot(set[i] * top[i]).real();
  }
  return q;
}

QSurrogate q_ub(const std::vector<CMatrix>& point) {
  QSurrogate s;
  s.top.reserve(point.size());
  for (const auto& S : point) s.top.push_back(S.size() ? spectral_norm_top(S, true).vector : CVector());
  return s;
}

double quad_lb(const CMatrix& Q, const CVector& v, const CVector& v_q) {
  const CVector Qvq = Q * v_q;
  return 2.0 * v.dot(Qvq).real() - v_q.dot(Qvq).real();
}

double quad_over_lin_lb(const CMatrix& C, const CVector& v, double lambda, const CVector& v_q, double lambda_q,
                        double tau) {
  const CVector Cvq = C * v_q;
  return 2.0 * v.dot(Cvq).real() / (tau * lambda_q) - v_q.dot(Cvq).real() * lambda / (tau * lambda_q * lambda_q);
}

}  // namespace irsug
