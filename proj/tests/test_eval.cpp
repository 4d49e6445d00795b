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
#include <numbers>
#include <random>

#include "doctest.h"
#include "irsug/eval.hpp"
#include "irsug/opt_nonoverlap.hpp"
#include "oracles.hpp"

using namespace irsug;

namespace {

Design random_design(const SystemConfig& cfg, std::mt19937_64& rng) {
  const int K = cfg.num_info_users, L = cfg.max_groups, M = cfg.num_antennas, N = cfg.num_elements;
  Design d = empty_design(K, L, M, N, cfg.duration_s);
  for (int l = 0; l < L; ++l) {
    d.tau(l) = cfg.duration_s / L;
    d.v[l] = oracle::random_reflect(N, rng);
    d.W_E[l] = oracle::random_psd(M, 1, rng) * (0.2 * cfg.power_w / M);
    for (int k = 0; k < K; ++k) {
      d.a(k, l) = (k + l) % 2 == 0 ? 1.0 : 0.0;
      if (d.a(k, l) == 1.0) d.w[k][l] = oracle::random_complex(M, 1, rng).col(0) * std::sqrt(0.2 * cfg.power_w / (K * M));
    }
  }
  return d;
}

// Fraction of |x - ref| / se values above 3, and the largest one.
struct ZStats {
  int count = 0, above3 = 0;
  double worst = 0.0;
  void add(double x, double ref, double se) {
    const double z = std::abs(x - ref) / std::max(se, 1e-300);
    ++count;
    if (z > 3.0) ++above3;
    worst = std::max(worst, z);
  }
};

}  // namespace

TEST_SUITE("eval") {
  TEST_CASE("zero beams: no throughput, energy from the energy signal only") {
    const auto cfg = desk_profile();
    const auto ch = generate_channels(cfg, 1);
    const auto st = phase_error_moment_matrix(cfg.num_elements, true);
    std::mt19937_64 rng(1);
    Design d = random_design(cfg, rng);
    for (auto& row : d.w)
      for (auto& w : row) w.setZero();
    const auto m = expected_metrics(d, ch, st, cfg);
    CHECK(m.throughput.cwiseAbs().maxCoeff() == 0.0);
    CHECK(m.eta == 0.0);
    for (int j = 0; j < 2; ++j) {
      double e = 0.0;
      for (int l = 0; l < 2; ++l) e += d.tau(l) * oracle::trace_product(oracle::effective_loops(ch.G[j], d.v[l], st.Z), d.W_E[l]);
      CHECK(m.energy(j) == doctest::Approx(e).epsilon(1e-12));
    }
  }

  TEST_CASE("single IU without interference") {
    auto cfg = desk_profile();
    cfg.num_info_users = 1;
    cfg.max_groups = 1;
    const auto ch = generate_channels(cfg, 2);
    const auto st = phase_error_moment_matrix(cfg.num_elements, true);
    std::mt19937_64 rng(2);
    Design d = random_design(cfg, rng);
    d.W_E[0].setZero();
    d.a(0, 0) = 1.0;
    d.w[0][0] = oracle::random_complex(2, 1, rng).col(0);
    const CMatrix X = oracle::effective_loops(ch.H[0], d.v[0], st.Z);
    const double gamma = d.w[0][0].dot(X * d.w[0][0]).real() / cfg.noise_w;
    const auto m = expected_metrics(d, ch, st, cfg);
    CHECK(m.sinr(0, 0) == doctest::Approx(gamma).epsilon(1e-12));
    CHECK(m.eta == doctest::Approx(cfg.duration_s * std::log2(1 + gamma)).epsilon(1e-12));
    CHECK(m.active_slots == 1);
  }

  TEST_CASE("metrics bookkeeping") {
    const auto cfg = desk_profile();
    const auto ch = generate_channels(cfg, 3);
    const auto st = phase_error_moment_matrix(cfg.num_elements, true);
    std::mt19937_64 rng(3);
    Design d = random_design(cfg, rng);
    d.tau(1) = 1e-7 * cfg.duration_s;
    const auto m = expected_metrics(d, ch, st, cfg);
    CHECK(m.eta == m.throughput.minCoeff());
    CHECK(m.active_slots == 1);
    CHECK(m.sum_a == d.a.sum());
    CHECK(m.eh_margin == doctest::Approx(m.energy.minCoeff() - cfg.energy_j));
    d.v.pop_back();
    CHECK_THROWS_AS(expected_metrics(d, ch, st, cfg), ShapeMismatch);
  }

  TEST_CASE("energy is linear in the energy covariance") {
    const auto cfg = desk_profile();
    const auto ch = generate_channels(cfg, 4);
    const auto st = phase_error_moment_matrix(cfg.num_elements, true);
    std::mt19937_64 rng(4);
    Design d = random_design(cfg, rng);
    for (auto& row : d.w)
      for (auto& w : row) w.setZero();
    const RVector e1 = expected_metrics(d, ch, st, cfg).energy;
    for (auto& W : d.W_E) W *= 2.0;
    const RVector e2 = expected_metrics(d, ch, st, cfg).energy;
    CHECK((e2 - 2.0 * e1).cwiseAbs().maxCoeff() <= 1e-15 * e1.maxCoeff());
  }

  TEST_CASE("closed-form expectations agree with phase-error sampling") {
    const auto cfg = desk_profile();
    const auto st = phase_error_moment_matrix(cfg.num_elements, true);
    ZStats z;
    for (int t = 0; t < 5; ++t) {
      const auto ch = generate_channels(cfg, 10 + t);
      std::mt19937_64 rng(20 + t);
      const Design d = random_design(cfg, rng);
      const auto m = expected_metrics(d, ch, st, cfg);
      const auto s = sampled_metrics(d, ch, cfg, 100000, 99 + t);
      CHECK(m.eta > 0.0);
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 2; ++l) {
          const CMatrix X = effective_matrix(ch.H[k], d.v[l], st);
          const double sig = d.a(k, l) * d.w[k][l].dot(X * d.w[k][l]).real();
          if (sig > 0.0) z.add(s.signal_mean(k, l), sig, s.signal_se(k, l));
          double den = (X * d.W_E[l]).trace().real() + cfg.noise_w;
          for (int j = 0; j < 4; ++j)
            if (j != k) den += d.a(j, l) * d.w[j][l].dot(X * d.w[j][l]).real();
          z.add(s.denominator_mean(k, l), den, s.denominator_se(k, l));
        }
      for (int j = 0; j < 2; ++j) z.add(s.energy_mean(j), m.energy(j), s.energy_se(j));
    }
    MESSAGE("comparisons " << z.count << ", above 3 SE " << z.above3 << ", worst " << z.worst);
    CHECK(z.above3 <= std::max(1, z.count / 20));
    CHECK(z.worst < 4.5);
  }

  TEST_CASE("zero sampling width reproduces the error-free model") {
    const auto cfg = desk_profile();
    const auto ch = generate_channels(cfg, 5);
    std::mt19937_64 rng(5);
    const Design d = random_design(cfg, rng);
    const auto flat = phase_error_moment_matrix(cfg.num_elements, false);
    const auto m = expected_metrics(d, ch, flat, cfg);
    const auto s = sampled_metrics(d, ch, cfg, 10, 1, 0.0);
    CHECK((s.throughput_ratio - m.throughput).cwiseAbs().maxCoeff() <= 1e-10 * m.throughput.maxCoeff());
    CHECK((s.throughput_mean_log - m.throughput).cwiseAbs().maxCoeff() <= 1e-10 * m.throughput.maxCoeff());
    CHECK((s.energy_mean - m.energy).cwiseAbs().maxCoeff() <= 1e-10 * m.energy.maxCoeff());
  }

  TEST_CASE("standard error scales with the sample count") {
    const auto cfg = desk_profile();
    const auto ch = generate_channels(cfg, 6);
    std::mt19937_64 rng(6);
    const Design d = random_design(cfg, rng);
    const auto a = sampled_metrics(d, ch, cfg, 20000, 3);
    const auto b = sampled_metrics(d, ch, cfg, 40000, 4);
    const double ratio = (b.energy_se(0) * b.energy_se(0)) / (a.energy_se(0) * a.energy_se(0));
    CHECK(ratio == doctest::Approx(0.5).epsilon(0.2));
  }

  TEST_CASE("sampling does not depend on the worker count") {
    const auto cfg = desk_profile();
    const auto ch = generate_channels(cfg, 7);
    std::mt19937_64 rng(7);
    const Design d = random_design(cfg, rng);
    const auto a = sampled_metrics(d, ch, cfg, 3001, 11, std::numbers::pi, 1);
    const auto b = sampled_metrics(d, ch, cfg, 3001, 11, std::numbers::pi, 3);
    CHECK(a.eta_mean_log == b.eta_mean_log);
    CHECK(a.eta_ratio == b.eta_ratio);
    CHECK((a.energy_mean - b.energy_mean).norm() == 0.0);
    CHECK_THROWS_AS(sampled_metrics(d, ch, cfg, 0, 1), InvalidInput);
  }

  TEST_CASE("phase moment estimator") {
    const auto e = sampled_phase_moment(2, 100000, 5);
    const RMatrix Z = phase_error_moment_matrix(2, true).Z;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        if (i == j) {
          CHECK(e.mean(i, j).real() == doctest::Approx(1.0));
          continue;
        }
        CHECK(std::abs(e.mean(i, j).real() - Z(i, j)) <= 3.0 * e.se_real(i, j));
        CHECK(std::abs(e.mean(i, j).imag()) <= 3.0 * e.se_imag(i, j));
      }
    const auto w1 = sampled_phase_moment(2, 5000, 9, 1), w2 = sampled_phase_moment(2, 5000, 9, 2);
    CHECK((w1.mean - w2.mean).norm() == 0.0);
  }

  TEST_CASE("pairwise sum") {
    std::vector<double> x(1000);
    for (int i = 0; i < 1000; ++i) x[i] = i + 1;
    CHECK(pairwise_sum(x.data(), x.size()) == 500500.0);
    CHECK(pairwise_sum(x.data(), 0) == 0.0);
  }

  TEST_CASE("audit flags each violated constraint") {
    const auto cfg = desk_profile();
    const auto ch = generate_channels(cfg, 2);
    const auto st = phase_error_moment_matrix(cfg.num_elements, true);
    const auto good = solve_p1(ch, st, cfg).design;
    CHECK(audit_design(good, ch, st, cfg, true).ok);

    Design d = good;
    for (auto& W : d.W_E) W += CMatrix::Identity(2, 2) * cfg.power_w;
    CHECK_FALSE(audit_design(d, ch, st, cfg, true).ok);

    d = good;
    d.tau *= 1.01;
    CHECK(audit_design(d, ch, st, cfg, true).time_excess > 0.0);

    d = good;
    d.v[0](0) *= 0.9;
    CHECK(audit_design(d, ch, st, cfg, true).modulus_error > 0.09);

    d = good;
    d.a(0, 0) = d.a(0, 1) = 1.0;
    CHECK_FALSE(audit_design(d, ch, st, cfg, true).ok);
    CHECK(audit_design(d, ch, st, cfg, false).max_groups_per_iu == 2.0);

    auto high = cfg;
    high.energy_j = 1.0;
    CHECK(audit_design(good, ch, st, high, true).eh_margin < 0.0);
  }

  TEST_CASE("oracle enumeration counts and budget") {
    int calls = 0;
    auto count = [&](const RMatrix&) { return double(++calls); };
    CHECK(brute_force_grouping_oracle(1, 1, true, count).candidates.size() == 2);
    CHECK(brute_force_grouping_oracle(2, 2, true, count).candidates.size() == 9);
    CHECK(brute_force_grouping_oracle(2, 2, false, count).candidates.size() == 16);
    CHECK(brute_force_grouping_oracle(4, 2, true, count).candidates.size() == 81);
    CHECK_THROWS_AS(brute_force_grouping_oracle(5, 2, true, count), InvalidInput);
    CHECK_THROWS_AS(brute_force_grouping_oracle(2, 3, true, count), InvalidInput);
    const auto t = brute_force_grouping_oracle(2, 2, true, [](const RMatrix& a) { return a(0, 0) + 2 * a(1, 1); });
    CHECK(t.best_value == 3.0);
    for (const auto& a : t.candidates) CHECK(a.rowwise().sum().maxCoeff() <= 1.0);
  }

  TEST_CASE("oracle with the frozen solver is deterministic") {
    auto cfg = desk_profile();
    cfg.num_info_users = 2;
    const auto ch = generate_channels(cfg, 3);
    const auto st = phase_error_moment_matrix(cfg.num_elements, true);
    const auto a = brute_force_grouping_oracle(ch, st, cfg, true);
    const auto b = brute_force_grouping_oracle(ch, st, cfg, true);
    REQUIRE(a.values.size() == 9);
    CHECK(a.values == b.values);
    CHECK(a.values[0] == 0.0);  // nobody served
    CHECK(a.best_value > 0.0);
  }
}
