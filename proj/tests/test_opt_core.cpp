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

#include <cmath>
#include <random>

#include "doctest.h"
#include "irsug/model.hpp"
#include "irsug/opt_core.hpp"
#include "oracles.hpp"

using namespace irsug;

TEST_SUITE("opt_core") {
  TEST_CASE("binary penalty values") {
    CHECK(penalty_h(RMatrix::Ones(2, 3)) == 0.0);
    CHECK(penalty_h(RMatrix::Zero(2, 3)) == 0.0);
    RMatrix half = RMatrix::Zero(1, 1);
    half(0, 0) = 0.5;
    CHECK(penalty_h(half) == 0.25);
    RMatrix a(2, 2);
    a << 0.2, 1.0, 0.0, 0.7;
    CHECK(penalty_h(a) == doctest::Approx(0.37).epsilon(1e-14));
    a(0, 0) = 1.1;
    CHECK_THROWS_AS(penalty_h(a), InvalidInput);
    a(0, 0) = -1e-10;
    CHECK_NOTHROW(penalty_h(a));
  }

  TEST_CASE("binary penalty is positive off the vertices") {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(1e-6, 1.0 - 1e-6);
    for (int t = 0; t < 200; ++t) {
      RMatrix a = RMatrix::NullaryExpr(3, 2, [&] { return u(rng); });
      CHECK(penalty_h(a) > 0.0);
    }
  }

  TEST_CASE("tangent minorant of a^2") {
    CHECK(chi_lb(0.5, 0.5) == 0.25);
    CHECK(chi_lb(0.8, 0.0) == 0.0);
    CHECK(chi_lb(1.0, 0.3) == doctest::Approx(0.51));
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 1000; ++t) {
      const double a = u(rng), r = u(rng);
      CHECK(chi_lb(a, r) <= a * a + 1e-15);
    }
    RMatrix a = RMatrix::NullaryExpr(2, 2, [&] { return u(rng); });
    CHECK(h_ub(a, a) == doctest::Approx(penalty_h(a)).epsilon(1e-14));
  }

  TEST_CASE("interference-free log term") {
    const double sigma2 = 1e-11;
    CHECK(g_concave(0.0, 0.4, sigma2) == doctest::Approx(0.4 * std::log2(sigma2)));
    CHECK_THROWS_AS(g_concave(1.0, 0.0, sigma2), DomainError);
    CHECK_THROWS_AS(g_ub(1.0, -1.0, sigma2), DomainError);
  }

  TEST_CASE("interference sums the other users and the energy signal") {
    std::mt19937_64 rng(3);
    const CMatrix X = oracle::random_psd(3, 3, rng);
    std::vector<CMatrix> S = {oracle::random_psd(3, 1, rng), oracle::random_psd(3, 1, rng), oracle::random_psd(3, 1, rng)};
    const CMatrix SE = oracle::random_psd(3, 2, rng);
    const double ref = oracle::trace_product(X, S[0]) + oracle::trace_product(X, S[2]) + oracle::trace_product(X, SE);
    CHECK(interference(1, S, SE, X) == doctest::Approx(ref).epsilon(1e-13));
  }

  TEST_CASE("log majorant: tangency and upper bound") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.5, 1.5), base(0.0, 2.0);
    double worst = 0.0;
    for (int t = 0; t < 1000; ++t) {
      const double sigma2 = 1.0;
      const double I_r = base(rng), tau_r = 0.1 + base(rng);
      const GSurrogate g = g_ub(I_r, tau_r, sigma2);
      CHECK(std::abs(g(I_r, tau_r) - g_concave(I_r, tau_r, sigma2)) <= 1e-10 * std::max(1.0, std::abs(g.value_r)));
      const double I = I_r * u(rng), tau = tau_r * u(rng);
      worst = std::min(worst, g(I, tau) - g_concave(I, tau, sigma2));
    }
    CHECK(worst >= -1e-9);
  }

  TEST_CASE("rank penalty values") {
    std::mt19937_64 rng(5);
    std::vector<CMatrix> r1 = {oracle::random_psd(3, 1, rng), oracle::random_psd(4, 1, rng), CMatrix::Zero(2, 2)};
    CHECK(penalty_q(r1) == 0.0);
    CHECK(penalty_q({CMatrix::Identity(2, 2)}) == doctest::Approx(1.0));
    CMatrix bad = CMatrix::Identity(2, 2);
    bad(1, 1) = -1.0;
    CHECK_THROWS_AS(penalty_q({bad}), NotPsd);
  }

  TEST_CASE("rank majorant: tangency and upper bound") {
    std::mt19937_64 rng(6);
    std::normal_distribution<double> g(0.0, 0.5);
    for (int t = 0; t < 50; ++t) {
      std::vector<CMatrix> point = {oracle::random_psd(3, 3, rng), oracle::random_psd(3, 2, rng)};
      const QSurrogate q = q_ub(point);
      CHECK(std::abs(q(point) - penalty_q(point)) <= 1e-10 * std::max(1.0, penalty_q(point)));
      for (int s = 0; s < 20; ++s) {
        std::vector<CMatrix> pert;
        for (const auto& P : point) {
          const CMatrix D = oracle::random_complex(3, 3, rng) * (0.5 * g(rng));
          pert.push_back(hermitian_part(P + D * D.adjoint()));
        }
        CHECK(q(pert) - penalty_q(pert) >= -1e-10);
      }
    }
  }

  TEST_CASE("quadratic minorant") {
    std::mt19937_64 rng(7);
    const CMatrix Q = oracle::random_psd(5, 3, rng);
    const CVector vq = oracle::random_reflect(4, rng);
    CHECK(quad_lb(Q, vq, vq) == doctest::Approx(vq.dot(Q * vq).real()).epsilon(1e-14));
    CHECK(quad_lb(CMatrix::Zero(5, 5), vq, vq) == 0.0);
    double worst = 0.0;
    for (int t = 0; t < 1000; ++t) {
      const CVector v = oracle::random_complex(5, 1, rng).col(0);
      worst = std::min(worst, v.dot(Q * v).real() - quad_lb(Q, v, vq));
    }
    CHECK(worst >= -1e-10);
  }

  TEST_CASE("quadratic-over-linear minorant") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> lam(0.05, 5.0);
    const CMatrix C = oracle::random_psd(4, 2, rng);
    const CVector vq = oracle::random_reflect(3, rng);
    const double lq = 1.3, tau = 0.6;
    const double at = vq.dot(C * vq).real() / (tau * lq);
    CHECK(std::abs(quad_over_lin_lb(C, vq, lq, vq, lq, tau) - at) <= 1e-10 * at);
    for (int t = 0; t < 1000; ++t) {
      const CVector v = oracle::random_complex(4, 1, rng).col(0);
      const double l = lam(rng);
      CHECK(v.dot(C * v).real() / (tau * l) - quad_over_lin_lb(C, v, l, vq, lq, tau) >= -1e-9);
    }
  }
}
