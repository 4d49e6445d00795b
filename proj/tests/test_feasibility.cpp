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
#include "irsug/feasibility.hpp"
#include "oracles.hpp"

using namespace irsug;

namespace {

SystemConfig small_cfg(int J, int L, int N) {
  SystemConfig c = desk_profile();
  c.num_energy_users = J;
  c.max_groups = L;
  c.num_elements = N;
  return c;
}

std::vector<CVector> ones(int L, int N) { return std::vector<CVector>(L, unit_reflect(N)); }

}  // namespace

TEST_SUITE("feasibility") {
  TEST_CASE("single EU, single slot: energy equals T P lambda_max") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      const auto cfg = small_cfg(1, 1, 4);
      const auto ch = generate_channels(cfg, seed);
      const auto st = phase_error_moment_matrix(cfg.num_elements, true);
      const auto v = ones(1, cfg.num_elements);
      const auto r = solve_energy_time_sdp(ch, st, v, cfg);
      REQUIRE(r.status == conic::Status::Optimal);
      const CMatrix Y = oracle::effective_loops(ch.G[0], v[0], st.Z);
      const double ref = cfg.duration_s * cfg.power_w * oracle::lambda_max_power(Y);
      CHECK(r.delta == doctest::Approx(ref).epsilon(1e-6));
      CHECK(r.tau(0) == doctest::Approx(cfg.duration_s).epsilon(1e-6));
      CHECK(r.S_E[0].trace().real() <= cfg.duration_s * cfg.power_w * (1 + 1e-8));
    }
  }

  TEST_CASE("zero power gives zero energy") {
    auto cfg = small_cfg(2, 2, 3);
    const auto ch = generate_channels(cfg, 5);
    cfg.power_w = 0.0;
    const auto r = solve_energy_time_sdp(ch, phase_error_moment_matrix(3, true), ones(2, 3), cfg);
    CHECK(r.delta == 0.0);
    for (const auto& S : r.S_E) CHECK(S.norm() == 0.0);
  }

  TEST_CASE("duplicate EUs do not change the optimum") {
    const auto cfg = small_cfg(1, 2, 4);
    auto ch = generate_channels(cfg, 8);
    const auto st = phase_error_moment_matrix(4, true);
    const auto v = ones(2, 4);
    const double one = solve_energy_time_sdp(ch, st, v, cfg).delta;
    ch.G.push_back(ch.G[0]);
    const double two = solve_energy_time_sdp(ch, st, v, cfg).delta;
    CHECK(two == doctest::Approx(one).epsilon(1e-6));
  }

  TEST_CASE("energy SDP respects power and time") {
    const auto cfg = small_cfg(3, 3, 5);
    const auto ch = generate_channels(cfg, 4);
    const auto st = phase_error_moment_matrix(5, true);
    const auto r = solve_energy_time_sdp(ch, st, ones(3, 5), cfg);
    CHECK(r.tau.sum() <= cfg.duration_s + 1e-10);
    for (int l = 0; l < 3; ++l) {
      CHECK(r.tau(l) >= 0.0);
      CHECK(r.S_E[l].trace().real() <= r.tau(l) * cfg.power_w + 1e-8 * cfg.power_time());
      CHECK(eig_hermitian(r.S_E[l]).values.minCoeff() >= -1e-9 * cfg.power_time());
    }
    CHECK(min_energy(ch, st, r.S_E, ones(3, 5)) == doctest::Approx(r.delta).epsilon(1e-6));
  }

  TEST_CASE("reflect SCA with zero energy channels leaves v alone") {
    const auto cfg = small_cfg(1, 1, 3);
    auto ch = generate_channels(cfg, 2);
    ch.G[0].setZero();
    const auto st = phase_error_moment_matrix(3, true);
    const auto v = ones(1, 3);
    std::vector<CMatrix> S(1, CMatrix::Identity(2, 2));
    const auto r = reflect_energy_sca(ch, st, S, RVector::Constant(1, 1.0), v, cfg);
    CHECK(r.delta == 0.0);
    CHECK((r.v[0] - v[0]).norm() < 1e-9);
  }

  TEST_CASE("one-element reflect SCA reaches the phase grid optimum") {
    for (std::uint64_t seed : {3u, 4u, 5u}) {
      const auto cfg = small_cfg(1, 1, 1);
      const auto ch = generate_channels(cfg, seed);
      const auto st = phase_error_moment_matrix(1, true);
      const auto v0 = ones(1, 1);
      const auto sdp = solve_energy_time_sdp(ch, st, v0, cfg);
      const auto r = reflect_energy_sca(ch, st, sdp.S_E, sdp.tau, v0, cfg);
      for (std::size_t i = 1; i < r.trace.size(); ++i) CHECK(r.trace[i] >= r.trace[i - 1] - 1e-8 * std::abs(r.trace[i - 1]));
      auto energy = [&](double ph) {
        std::vector<CVector> v(1, CVector(2));
        v[0] << std::polar(1.0, ph), 1.0;
        return min_energy(ch, st, sdp.S_E, v);
      };
      const auto grid = oracle::phase_grid_search(64, energy);
      const double at = min_energy(ch, st, sdp.S_E, {project_unit_modulus(r.v[0])});
      CHECK(at >= grid.best * (1.0 - 1e-3));
    }
  }

  TEST_CASE("projection") {
    CVector v(3);
    v << Complex(0.3, 0.4), 0.0, Complex(0.2, 0.0);
    const CVector p = project_unit_modulus(v);
    CHECK(std::abs(p(0) - Complex(0.6, 0.8)) < 1e-15);
    CHECK(p(1) == Complex(1.0, 0.0));
    CHECK(p(2) == Complex(1.0, 0.0));
  }

  TEST_CASE("zero requirement is feasible at once") {
    auto cfg = desk_profile();
    cfg.energy_j = 0.0;
    const auto ch = generate_channels(cfg, 1);
    const auto r = check_feasibility(ch, phase_error_moment_matrix(cfg.num_elements, true), cfg);
    CHECK(r.feasible());
    CHECK(r.iterations == 0);
    CHECK(r.trace.size() == 1);
  }

  TEST_CASE("ten times the converged energy is infeasible") {
    auto cfg = desk_profile();
    const auto ch = generate_channels(cfg, 3);
    const auto st = phase_error_moment_matrix(cfg.num_elements, true);
    cfg.energy_j = 1e3;
    const auto conv = check_feasibility(ch, st, cfg);
    CHECK_FALSE(conv.feasible());
    CHECK(conv.heuristic);
    const double delta = conv.design.delta;
    REQUIRE(delta > 0.0);
    for (std::size_t i = 1; i < conv.trace.size(); ++i) CHECK(conv.trace[i] >= conv.trace[i - 1] - 1e-8 * conv.trace[i - 1]);

    cfg.energy_j = 10.0 * delta;
    const auto r = check_feasibility(ch, st, cfg);
    CHECK_FALSE(r.feasible());
    cfg.energy_j = 0.5 * delta;
    CHECK(check_feasibility(ch, st, cfg).feasible());
  }

  TEST_CASE("feasibility output invariants over seeds") {
    auto cfg = desk_profile();
    cfg.energy_j = 2e-5;  // forces reflect iterations on most seeds
    const auto st = phase_error_moment_matrix(cfg.num_elements, true);
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
      const auto ch = generate_channels(cfg, seed);
      const auto r = check_feasibility(ch, st, cfg);
      for (std::size_t i = 1; i < r.trace.size(); ++i)
        CHECK(r.trace[i] >= r.trace[i - 1] - 1e-8 * std::abs(r.trace[i - 1]));
      const auto& d = r.design;
      CHECK(d.tau.sum() <= cfg.duration_s + 1e-10);
      const auto W = d.energy_covariances();
      for (std::size_t l = 0; l < d.v.size(); ++l) {
        if (d.tau(l) > 0.0)
          for (Eigen::Index n = 0; n < d.v[l].size(); ++n) CHECK(std::abs(std::abs(d.v[l](n)) - 1.0) <= 1e-6);
        CHECK(W[l].trace().real() <= cfg.power_w * (1.0 + 1e-8));
      }
      CHECK(min_energy(ch, st, d.S_E, d.v) == doctest::Approx(d.delta).epsilon(1e-9));
      CHECK(r.feasible() == (d.delta >= cfg.energy_j));
    }
  }
}
