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

#include <vector>

#include "irsug/numerics.hpp"

namespace irsug {

// Per-(k, l) matrices are stored as grid[k][l].
template <typename T>
using Grid = std::vector<std::vector<T>>;

// Local point of the successive convex approximation.
struct ExpansionPoint {
  Grid<CMatrix> S_tilde;      // K x L
  std::vector<CMatrix> S_E;   // L
  RVector tau;                // L
  RMatrix a;                  // K x L
  std::vector<CVector> v;     // L
  RMatrix lambda;             // K x L
};

/// sum_{k,l} (a - a^2). Throws InvalidInput when an entry leaves [0, 1] by more than 1e-9.
double penalty_h(const RMatrix& a);

/// Tangent minorant of a^2 at a_r: -(a_r)^2 + 2 a_r a.
double chi_lb(double a, double a_r);

/// sum_{k,l} (a - chi_lb(a, a_r)).
double h_ub(const RMatrix& a, const RMatrix& a_r);

/// Interference seen by user k: sum_{i != k} tr(X S_i) + tr(X S_E).
double interference(int k, const std::vector<CMatrix>& S_slot, const CMatrix& S_E, const CMatrix& X);

/// tau * log2(I / tau + sigma2).
double g_concave(double interference, double tau, double sigma2);

// Affine majorant of g_concave around (I_r, tau_r).
struct GSurrogate {
  double value_r = 0.0;
  double I_r = 0.0;
  double tau_r = 0.0;
  double dI = 0.0;    // 1 / (Upsilon ln 2)
  double dtau = 0.0;  // log2(Upsilon) - (Upsilon - sigma2) / (Upsilon ln 2)
  double operator()(double I, double tau) const { return value_r + dI * (I - I_r) + dtau * (tau - tau_r); }
};

GSurrogate g_ub(double I_r, double tau_r, double sigma2);

/// sum (tr S - ||S||_2) over a set of PSD matrices.
double penalty_q(const std::vector<CMatrix>& set);

// Linear majorant of penalty_q: sum (tr S - s^H S s), s the top eigenvector of S^r.
struct QSurrogate {
  std::vector<CVector> top;
  double operator()(const std::vector<CMatrix>& set) const;
};

QSurrogate q_ub(const std::vector<CMatrix>& point);

/// 2 Re{v^H Q v_q} - v_q^H Q v_q.
double quad_lb(const CMatrix& Q, const CVector& v, const CVector& v_q);

/// Tangent minorant of v^H C v / (tau lambda) at (v_q, lambda_q).
double quad_over_lin_lb(const CMatrix& C, const CVector& v, double lambda, const CVector& v_q, double lambda_q,
                        double tau);

}  // namespace irsug
