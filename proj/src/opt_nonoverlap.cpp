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

#include "irsug/opt_nonoverlap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "irsug/eval.hpp"

namespace irsug {

namespace {

struct Recovery {
  Design design;
  double max_rank_ratio = 0.0;
};

// Unit-modulus projection, W = S_tilde / tau, rank-one extraction and
// rounding of a (ties go to 0). Residual non-rank-one parts and the signal
// of rounded-off pairs move into the energy covariance, which keeps the
// per-slot power and the harvested energy unchanged.
Recovery recover(const TransmitState& s, const std::vector<CVector>& v, const ChannelSet& ch, const PhaseStats& stats,
                 const SystemConfig& cfg) {
  const int K = s.num_info_users(), L = s.num_slots();
  const int M = ch.num_antennas;
  Recovery r;
  Design& d = r.design;
  d.a = RMatrix::Zero(K, L);
  d.tau = s.tau;
  d.w.assign(K, std::vector<CVector>(L, CVector::Zero(M)));
  d.W_E.assign(L, CMatrix::Zero(M, M));
  d.v.resize(L);
  for (int l = 0; l < L; ++l) {
    d.v[l] = project_unit_modulus(v[l]);
    const double tau = s.tau(l);
    if (!(tau > 0.0)) continue;
    CMatrix WE = s.S_E[l] / tau;
    for (int k = 0; k < K; ++k) {
      const CMatrix W = hermitian_part(s.S_tilde[k][l] / tau);
      if (!(s.a(k, l) > 0.5)) {
        WE += W;
        continue;
      }
      d.a(k, l) = 1.0;
      const Rank1Factor f = rank1_factor(W, 1e-9);
      d.w[k][l] = f.w;
      WE += W - f.w * f.w.adjoint();
      r.max_rank_ratio = std::max(r.max_rank_ratio, f.residual_ratio);
    }
    d.W_E[l] = hermitian_part(WE);
  }
  d.eta = expected_metrics(d, ch, stats, cfg).eta;
  return r;
}

TransmitState state_from_design(const Design& d) {
  const int K = d.num_info_users(), L = d.num_slots();
  const int M = static_cast<int>(d.W_E.empty() ? 0 : d.W_E[0].rows());
  TransmitState s;
  s.a = d.a;
  s.tau = d.tau;
  s.S_E.resize(L);
  s.S_tilde.assign(K, std::vector<CMatrix>(L, CMatrix::Zero(M, M)));
  for (int l = 0; l < L; ++l) {
    s.S_E[l] = d.tau(l) * d.W_E[l];
    for (int k = 0; k < K; ++k)
      if (d.a(k, l) > 0.5) s.S_tilde[k][l] = d.tau(l) * (d.w[k][l] * d.w[k][l].adjoint());
  }
  s.S = s.S_tilde;
  return s;
}

std::vector<CMatrix> flatten(const Grid<CMatrix>& g) {
  std::vector<CMatrix> out;
  for (const auto& row : g)
    for (const auto& m : row) out.push_back(m);
  return out;
}

}  // namespace

SolveReport solve_grouped(const ChannelSet& ch, const PhaseStats& stats, const SystemConfig& cfg,
                          const FeasibilityReport& feas, GroupingMode mode, const RMatrix& a0) {
  const auto& alg = cfg.algorithm;
  const bool penalized = mode == GroupingMode::Penalized;
  const int K = static_cast<int>(ch.H.size());
  const int L = static_cast<int>(a0.cols());
  SolveReport rep;
  rep.trace.feasibility = feas.trace;
  if (a0.rows() != K || static_cast<int>(feas.design.v.size()) != L)
    throw ShapeMismatch("solve_grouped: grouping shape does not match the channels");

  TransmitState state = initial_state(ch, feas.design, a0, cfg);
  std::vector<CVector> v = feas.design.v;
  bool have = false;
  double eta = 0.0;
  double rho = penalized ? alg.rho0 : 0.0;
  const int rounds = penalized ? alg.max_penalty_rounds : 1;

  for (int round = 0; round < rounds; ++round) {
    std::vector<double> phase;
    double prev = -std::numeric_limits<double>::infinity();
    if (have) {
      prev = eta - (penalized ? rho * penalty_h(state.a) : 0.0);
      phase.push_back(prev);
    }
    for (int i = 0; i < alg.max_bcd_iterations; ++i) {
      const Algorithm1Result tx = algorithm1(state, ch, stats, v, mode, rho, cfg);
      rep.trace.conic_solves += tx.solves;
      for (const auto& t : tx.trace) rep.trace.transmit.push_back(t);
      if (!tx.improved) {
        if (!have) {
          rep.feasible_start = false;
          rep.message = std::string("transmit program failed: ") + conic::to_string(tx.status);
        }
        break;
      }
      const ReflectScaResult rx = reflect_sca(tx.state, ch, stats, v, cfg);
      rep.trace.conic_solves += static_cast<int>(rx.trace.size());
      rep.trace.reflect.push_back(rx.trace);
      const double h = penalized ? penalty_h(tx.state.a) : 0.0;
      const double obj = rx.eta - rho * h;
      if (have && !(obj >= prev)) break;  // no ascent: keep the previous block values
      const double rel = have ? (obj - prev) / std::max(std::abs(prev), 1e-6) : std::numeric_limits<double>::infinity();
      state = tx.state;
      v = rx.v;
      eta = rx.eta;
      have = true;
      prev = obj;
      phase.push_back(obj);
      rep.trace.bcd.push_back({rho, i, eta, h, tx.q, obj});
      if (rel < alg.eps2) break;
    }
    rep.trace.bcd_objective.push_back(std::move(phase));
    if (!have) break;
    if (!penalized || penalty_h(state.a) < alg.varsigma2) {
      rep.converged = true;
      break;
    }
    rho *= alg.c2;
  }

  if (!have) {
    rep.design = empty_design(K, L, ch.num_antennas, ch.num_elements, cfg.duration_s);
    return rep;
  }

  rep.final_h = penalized ? penalty_h(state.a) : 0.0;
  rep.final_q = penalty_q(flatten(state.S_tilde));
  for (int k = 0; k < K; ++k)
    for (int l = 0; l < L; ++l) rep.max_a_distance = std::max(rep.max_a_distance, std::min(state.a(k, l), 1.0 - state.a(k, l)));
  rep.pre_projection_margin = state_energy(ch, stats, state, v) - cfg.energy_j;

  Recovery rec = recover(state, v, ch, stats, cfg);
  rep.max_rank_ratio = rec.max_rank_ratio;
  auto eh_margin = [&](const Design& d) { return expected_metrics(d, ch, stats, cfg).eh_margin; };
  if (eh_margin(rec.design) < -1e-9) {
    // The projection moved the harvested energy below E: re-solve the
    // transmit side at the projected reflect vectors with the grouping fixed.
    rep.polished = true;
    const TransmitState start = state_from_design(rec.design);
    const Algorithm1Result tx = algorithm1(start, ch, stats, rec.design.v, GroupingMode::Fixed, 0.0, cfg);
    rep.trace.conic_solves += tx.solves;
    if (tx.improved) {
      Recovery again = recover(tx.state, rec.design.v, ch, stats, cfg);
      again.design.a = rec.design.a;
      rep.final_q = tx.q;
      rep.max_rank_ratio = again.max_rank_ratio;
      rec = std::move(again);
    }
    rep.projection_degraded = eh_margin(rec.design) < -1e-9;
  }
  rep.design = std::move(rec.design);
  for (int k = 0; k < K; ++k)
    if (rep.design.a.row(k).sum() < 0.5) rep.degenerate = true;
  if (rep.degenerate) rep.design.eta = 0.0;
  return rep;
}

SolveReport solve_p1(const ChannelSet& ch, const PhaseStats& stats, const SystemConfig& cfg,
                     const FeasibilityReport& feas) {
  if (!feas.feasible())
    throw InvalidInput("solve_p1: the instance failed the energy feasibility check; run check_feasibility first");
  return solve_grouped(ch, stats, cfg, feas, GroupingMode::Penalized,
                       round_robin_grouping(static_cast<int>(ch.H.size()), cfg.max_groups));
}

SolveReport solve_p1(const ChannelSet& ch, const PhaseStats& stats, const SystemConfig& cfg) {
  return solve_p1(ch, stats, cfg, check_feasibility(ch, stats, cfg));
}

}  // namespace irsug
