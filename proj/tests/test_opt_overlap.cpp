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

#include <random>

#include "doctest.h"
#include "irsug/baselines.hpp"
#include "irsug/eval.hpp"
#include "irsug/opt_overlap.hpp"
#include "oracles.hpp"

using namespace irsug;

namespace {

// Random design with arbitrary beams, including ones where a = 0.
Design synthetic(const SystemConfig& cfg, std::mt19937_64& rng, bool zero_unused) {
  const int K = cfg.num_info_users, L = cfg.max_groups, M = cfg.num_antennas, N = cfg.num_elements;
  Design d = empty_design(K, L, M, N, cfg.duration_s);
  std::bernoulli_distribution bit(0.5);
  std::uniform_real_distribution<double> u(0.1, 1.0);
  double total = 0.0;
  for (int l = 0; l < L; ++l) total += (d.tau(l) = u(rng));
  d.tau *= cfg.duration_s / total;
  for (int l = 0; l < L; ++l) {
    d.v[l] = oracle::random_reflect(N, rng);
    d.W_E[l] = oracle::random_psd(M, 1, rng) * (0.1 * cfg.power_w / M);
    for (int k = 0; k < K; ++k) {
      d.a(k, l) = bit(rng) ? 1.0 : 0.0;
      d.w[k][l] = oracle::random_complex(M, 1, rng).col(0) * std::sqrt(0.1 * cfg.power_w / (K * M));
      if (zero_unused && d.a(k, l) == 0.0) d.w[k][l].setZero();
    }
  }
  return d;
}

}  // namespace

TEST_SUITE("opt_overlap") {
  TEST_CASE("empty support gives an empty grouping") {
    const auto cfg = desk_profile();
    const Design d = empty_design(4, 2, 2, 8, 1.0);
    CHECK(recover_grouping(d, cfg).sum() == 0.0);
  }

  TEST_CASE("disjoint support is recovered as non-overlapping") {
    const auto cfg = desk_profile();
    Design d = empty_design(4, 2, 2, 8, 1.0);
    for (int k = 0; k < 4; ++k) d.w[k][k % 2] = CVector::Constant(2, Complex(0.5, 0.1));
    const RMatrix a = recover_grouping(d, cfg);
    for (int k = 0; k < 4; ++k) {
      CHECK(a.row(k).sum() == 1.0);
      CHECK(a(k, k % 2) == 1.0);
    }
  }

  TEST_CASE("threshold sits at 1e-8 P T / L") {
    const auto cfg = desk_profile();
    const double thr = support_threshold(cfg, 2);
    CHECK(thr == doctest::Approx(1e-8 * cfg.power_w * cfg.duration_s / 2));
    Design d = empty_design(1, 2, 2, 8, 1.0);
    d.w[0][0] = CVector::Zero(2);
    d.w[0][0](0) = std::sqrt(1.01 * thr);
    d.w[0][1](0) = std::sqrt(0.99 * thr);
    const RMatrix a = recover_grouping(d, cfg);
    CHECK(a(0, 0) == 1.0);
    CHECK(a(0, 1) == 0.0);
  }

  TEST_CASE("zeroing beams outside the grouping leaves the metrics unchanged") {
    const auto cfg = desk_profile();
    const auto ch = generate_channels(cfg, 3);
    const auto st = phase_error_moment_matrix(cfg.num_elements, true);
    std::mt19937_64 rng(5);
    for (int t = 0; t < 20; ++t) {
      Design d = synthetic(cfg, rng, false);
      const auto before = expected_metrics(d, ch, st, cfg);
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 2; ++l)
          if (d.a(k, l) == 0.0) d.w[k][l].setZero();
      const auto after = expected_metrics(d, ch, st, cfg);
      CHECK(std::abs(after.eta - before.eta) <= 1e-10);
    }
  }

  TEST_CASE("grouped designs map to the relaxed form with identical metrics") {
    const auto cfg = desk_profile();
    const auto ch = generate_channels(cfg, 4);
    const auto st = phase_error_moment_matrix(cfg.num_elements, true);
    std::mt19937_64 rng(6);
    for (int t = 0; t < 100; ++t) {
      const Design d = synthetic(cfg, rng, t % 2 == 0);
      const Design r = drop_grouping(d);
      CHECK(r.a.minCoeff() == 1.0);
      const auto m0 = expected_metrics(d, ch, st, cfg), m1 = expected_metrics(r, ch, st, cfg);
      CHECK((m0.throughput - m1.throughput).cwiseAbs().maxCoeff() <= 1e-10);
      CHECK((m0.energy - m1.energy).cwiseAbs().maxCoeff() <= 1e-10 * m0.energy.cwiseAbs().maxCoeff());
      CHECK((m0.slot_power - m1.slot_power).cwiseAbs().maxCoeff() <= 1e-12 * cfg.power_w);
    }
  }

  TEST_CASE("support grouping keeps power and energy") {
    const auto cfg = desk_profile();
    const auto ch = generate_channels(cfg, 5);
    const auto st = phase_error_moment_matrix(cfg.num_elements, true);
    std::mt19937_64 rng(7);
    Design d = drop_grouping(synthetic(cfg, rng, true));
    d.w[1][0] *= 1e-6;  // below the support threshold
    const auto m0 = expected_metrics(d, ch, st, cfg);
    const Design g = apply_support_grouping(d, cfg);
    const auto m1 = expected_metrics(g, ch, st, cfg);
    CHECK(g.a(1, 0) == 0.0);
    CHECK(g.w[1][0].norm() == 0.0);
    CHECK((m0.slot_power - m1.slot_power).cwiseAbs().maxCoeff() <= 1e-12 * cfg.power_w);
    CHECK((m0.energy - m1.energy).cwiseAbs().maxCoeff() <= 1e-12 * m0.energy.maxCoeff());
  }

  TEST_CASE("single IU: overlapping and non-overlapping solvers agree") {
    auto cfg = desk_profile();
    cfg.num_info_users = 1;
    const auto st = phase_error_moment_matrix(cfg.num_elements, true);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const auto ch = generate_channels(cfg, seed);
      const auto feas = check_feasibility(ch, st, cfg);
      const double p1 = solve_p1(ch, st, cfg, feas).design.eta;
      const double p2 = solve_p2prime(ch, st, cfg, feas).design.eta;
      CHECK(std::abs(p1 - p2) <= 1e-3 * std::max(p1, p2));
    }
  }

  TEST_CASE("single slot: relaxed solver equals the no-grouping baseline") {
    auto cfg = desk_profile();
    cfg.max_groups = 1;
    const auto st = phase_error_moment_matrix(cfg.num_elements, true);
    for (std::uint64_t seed = 1; seed <= 2; ++seed) {
      const auto ch = generate_channels(cfg, seed);
      const double p2 = solve_p2prime(ch, st, cfg).design.eta;
      const double nu = no_ug_solve(ch, st, cfg).eta();
      CHECK(std::abs(p2 - nu) <= 1e-6 * std::max(1.0, nu));
    }
  }

  TEST_CASE("overlapping solver: monotone traces and clean audits") {
    const auto cfg = desk_profile();
    const auto st = phase_error_moment_matrix(cfg.num_elements, true);
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
      const auto ch = generate_channels(cfg, seed);
      const auto r = solve_p2prime(ch, st, cfg);
      for (const auto& row : r.trace.bcd_objective)
        for (std::size_t i = 1; i < row.size(); ++i) CHECK(row[i] >= row[i - 1] - 1e-8 * std::abs(row[i - 1]));
      CHECK(r.final_q <= 1e-7);
      CHECK(audit_design(r.design, ch, st, cfg, false).ok);
      CHECK(r.design.a.minCoeff() >= 0.0);
    }
  }
}
