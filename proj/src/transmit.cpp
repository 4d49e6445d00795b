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

#include <algorithm>
#include <cmath>
#include <limits>

#include "irsug/opt_nonoverlap.hpp"

namespace irsug {

using conic::ConicProblem;
using conic::HermitianExpr;
using conic::HermitianVar;
using conic::LinExpr;

namespace {

constexpr double kFrozenSlot = 1e-6;  // relative to T

std::vector<CMatrix> flatten(const Grid<CMatrix>& g) {
  std::vector<CMatrix> out;
  for (const auto& row : g)
    for (const auto& m : row) out.push_back(m);
  return out;
}

CVector mrt_direction(const CMatrix& H, const CVector& v) {
  CVector h = H.adjoint() * v;
  const double n = h.norm();
  if (n > 0.0) return h / n;
  CVector e = CVector::Zero(H.cols());
  e(0) = 1.0;
  return e;
}

}  // namespace

RMatrix round_robin_grouping(int K, int L) {
  RMatrix a = RMatrix::Zero(K, L);
  if (L > 0)
    for (int k = 0; k < K; ++k) a(k, k % L) = 1.0;
  return a;
}

RVector state_throughput(const ChannelSet& ch, const PhaseStats& stats, const TransmitState& s,
                         const std::vector<CVector>& v, const SystemConfig& cfg) {
  const int K = s.num_info_users(), L = s.num_slots();
  const double sigma2 = cfg.noise_w;
  RVector r = RVector::Zero(K);
  for (int l = 0; l < L; ++l) {
    const double tau = s.tau(l);
    if (!(tau > 1e-12 * cfg.duration_s)) continue;
    CMatrix total = s.S_E[l];
    for (int i = 0; i < K; ++i) total += s.S_tilde[i][l];
    for (int k = 0; k < K; ++k) {
      const CMatrix X = effective_matrix(ch.H[k], v[l], stats);
      const double sig = std::max(0.0, (X * s.S_tilde[k][l]).trace().real());
      const double all = std::max(sig, (X * total).trace().real());
      const double interf = all - sig;
      r(k) += tau * std::log2(1.0 + sig / (interf + tau * sigma2));
    }
  }
  return r;
}

double state_energy(const ChannelSet& ch, const PhaseStats& stats, const TransmitState& s,
                    const std::vector<CVector>& v) {
  std::vector<CMatrix> total = s.S_E;
  for (int l = 0; l < s.num_slots(); ++l)
    for (int k = 0; k < s.num_info_users(); ++k) total[l] += s.S_tilde[k][l];
  return min_energy(ch, stats, total, v);
}

double penalized_objective(double eta, const TransmitState& s, const InnerParams& p) {
  double obj = eta;
  if (p.mode == GroupingMode::Penalized && p.rho != 0.0) obj -= p.rho * penalty_h(s.a);
  if (p.mu != 0.0) obj -= p.mu * penalty_q(flatten(s.S_tilde));
  return obj;
}

TransmitState initial_state(const ChannelSet& ch, const EnergyDesign& energy, const RMatrix& a0,
                            const SystemConfig& cfg) {
  const int K = static_cast<int>(ch.H.size());
  const int L = static_cast<int>(a0.cols());
  const int M = ch.num_antennas;
  const double T = cfg.duration_s, P = cfg.power_w;
  TransmitState s;
  s.a = a0;
  s.tau = RVector::Constant(L, T / L);
  s.S_E.assign(L, CMatrix::Zero(M, M));
  s.S_tilde.assign(K, std::vector<CMatrix>(L, CMatrix::Zero(M, M)));
  s.S = s.S_tilde;
  // The energy design is scaled to the share the EH constraint needs; the
  // information beams get at most what is left of each slot's budget.
  const double share = (ch.G.empty() || cfg.energy_j <= 0.0 || !(energy.delta > 0.0))
                           ? 0.0
                           : std::min(1.0, cfg.energy_j / energy.delta * (1.0 + 1e-6));
  const auto W_E = energy.energy_covariances();
  for (int l = 0; l < L; ++l) {
    if (l < static_cast<int>(W_E.size())) s.S_E[l] = (share * s.tau(l)) * W_E[l];
    const double left = std::max(0.0, s.tau(l) * P - s.S_E[l].trace().real());
    const double per_user = std::min(s.tau(l) * P / (2.0 * K), left / std::max(1, K));
    for (int k = 0; k < K; ++k) {
      const CVector d = mrt_direction(ch.H[k], energy.v[l]);
      s.S[k][l] = per_user * (d * d.adjoint());
      s.S_tilde[k][l] = a0(k, l) * s.S[k][l];
    }
  }
  return s;
}

InnerResult build_and_solve_inner(const TransmitState& point, const ChannelSet& ch, const PhaseStats& stats,
                                  const std::vector<CVector>& v, const InnerParams& params, const SystemConfig& cfg) {
  const int K = point.num_info_users(), L = point.num_slots();
  const int M = ch.num_antennas;
  const int J = static_cast<int>(ch.G.size());
  const double T = cfg.duration_s, P = cfg.power_w, E = cfg.energy_j, sigma2 = cfg.noise_w;
  const bool penalized = params.mode == GroupingMode::Penalized;

  std::vector<int> act;
  for (int l = 0; l < L; ++l)
    if (point.tau(l) > kFrozenSlot * T) act.push_back(l);

  auto has_signal = [&](int k, int l) { return penalized || point.a(k, l) > 0.5; };

  ConicProblem p;
  std::vector<std::vector<HermitianVar>> St(K, std::vector<HermitianVar>(L)), Sv = St;
  std::vector<HermitianVar> SE(L);
  std::vector<std::vector<int>> a_idx(K, std::vector<int>(L, -1));
  std::vector<int> tau_idx(L, -1);
  for (int l : act) {
    SE[l] = p.add_hermitian("S_E[" + std::to_string(l) + "]", M);
    tau_idx[l] = p.add_variable("tau[" + std::to_string(l) + "]").start;
    for (int k = 0; k < K; ++k) {
      if (!has_signal(k, l)) continue;
      const std::string tag = "[" + std::to_string(k) + "," + std::to_string(l) + "]";
      St[k][l] = p.add_hermitian("S_tilde" + tag, M);
      if (penalized) {
        Sv[k][l] = p.add_hermitian("S" + tag, M);
        a_idx[k][l] = p.add_variable("a" + tag).start;
      }
    }
  }
  const int eta_idx = p.add_variable("eta").start;
  auto tau = [&](int l) { return LinExpr::var(tau_idx[l]); };
  auto a = [&](int k, int l) { return LinExpr::var(a_idx[k][l]); };

  // Cones on the matrix variables, power and time budgets (powers normalized by P).
  LinExpr time_left(T);
  for (int l : act) {
    p.add_hermitian_psd(SE[l]);
    p.add_nonnegative(tau(l));
    time_left -= tau(l);
    LinExpr power = tau(l) - SE[l].trace();
    for (int k = 0; k < K; ++k) {
      if (!has_signal(k, l)) continue;
      p.add_hermitian_psd(St[k][l]);
      power -= St[k][l].trace();
      if (!penalized) continue;
      HermitianExpr upper(M);
      upper.add(St[k][l], -1.0).add_identity(a(k, l) * T);
      p.add_hermitian_psd(upper);
      HermitianExpr below(M);
      below.add(Sv[k][l], 1.0).add(St[k][l], -1.0);
      p.add_hermitian_psd(below);
      HermitianExpr above(M);
      above.add(St[k][l], 1.0).add(Sv[k][l], -1.0).add_identity((LinExpr(1.0) - a(k, l)) * T);
      p.add_hermitian_psd(above);
      p.add_nonnegative(a(k, l));
      p.add_nonnegative(LinExpr(1.0) - a(k, l));
    }
    p.add_nonnegative(power);
  }
  p.add_nonnegative(time_left);
  if (penalized)
    for (int k = 0; k < K; ++k) {
      LinExpr room(1.0);
      for (int l : act) room -= a(k, l);
      p.add_nonnegative(room);
    }

  // Energy harvesting, normalized by E.
  if (E > 0.0 && J > 0) {
    for (int j = 0; j < J; ++j) {
      LinExpr e(-1.0);
      for (int l : act) {
        const CMatrix Y = effective_matrix(ch.G[j], v[l], stats) * (P / E);
        e += SE[l].trace_with(Y);
        for (int k = 0; k < K; ++k)
          if (has_signal(k, l)) e += St[k][l].trace_with(Y);
      }
      p.add_nonnegative(e);
    }
  }

  // Rates: sum_l (f - g_ub) >= eta with noise normalized to one.
  for (int k = 0; k < K; ++k) {
    LinExpr rate = -LinExpr::var(eta_idx);
    for (int l : act) {
      if (!has_signal(k, l)) continue;
      const CMatrix X = effective_matrix(ch.H[k], v[l], stats) * (P / sigma2);
      LinExpr interf = SE[l].trace_with(X);
      double interf_r = (X * point.S_E[l]).trace().real() / P;
      for (int i = 0; i < K; ++i) {
        if (i == k || !has_signal(i, l)) continue;
        interf += St[i][l].trace_with(X);
        interf_r += (X * point.S_tilde[i][l]).trace().real() / P;
      }
      const LinExpr u = interf + St[k][l].trace_with(X) + tau(l);
      const int z = p.add_variable("z[" + std::to_string(k) + "," + std::to_string(l) + "]").start;
      p.add_cone(conic::perspective_log_hypograph(u, tau(l), LinExpr::var(z)));
      const GSurrogate g = g_ub(std::max(interf_r, 0.0), point.tau(l), 1.0);
      rate += LinExpr::var(z);
      rate -= LinExpr(g.value_r - g.dI * g.I_r - g.dtau * g.tau_r) + g.dI * interf + g.dtau * tau(l);
    }
    p.add_nonnegative(rate);
  }

  // Objective: eta - rho h_ub - mu q_ub (q in the original power units).
  LinExpr obj = LinExpr::var(eta_idx);
  for (int l : act)
    for (int k = 0; k < K; ++k) {
      if (!has_signal(k, l)) continue;
      if (penalized && params.rho != 0.0) obj -= params.rho * (1.0 - 2.0 * point.a(k, l)) * a(k, l);
      if (params.mu != 0.0) {
        const CVector s = spectral_norm_top(point.S_tilde[k][l], true).vector;
        const CMatrix proj = CMatrix::Identity(M, M) - s * s.adjoint();
        obj -= (params.mu * P) * St[k][l].trace_with(proj);
      }
    }
  p.maximize(obj);

  InnerResult res;
  const auto sol = conic::solve(p, solver_options(cfg.algorithm));
  res.status = sol.status;
  if (!sol.usable()) return res;

  TransmitState& s = res.state;
  s.a = RMatrix::Zero(K, L);
  s.tau = RVector::Zero(L);
  s.S_E.assign(L, CMatrix::Zero(M, M));
  s.S_tilde.assign(K, std::vector<CMatrix>(L, CMatrix::Zero(M, M)));
  s.S = s.S_tilde;
  for (int l : act) {
    s.tau(l) = std::max(0.0, sol.x(tau_idx[l]));
    s.S_E[l] = hermitian_part(SE[l].decode(sol.x) * P);
    for (int k = 0; k < K; ++k) {
      if (!has_signal(k, l)) continue;
      s.S_tilde[k][l] = hermitian_part(St[k][l].decode(sol.x) * P);
      if (penalized) {
        s.S[k][l] = hermitian_part(Sv[k][l].decode(sol.x) * P);
        s.a(k, l) = std::clamp(sol.x(a_idx[k][l]), 0.0, 1.0);
      } else {
        s.S[k][l] = s.S_tilde[k][l];
        s.a(k, l) = 1.0;
      }
    }
  }
  res.eta = state_throughput(ch, stats, s, v, cfg).minCoeff();
  res.objective = penalized_objective(res.eta, s, params);
  return res;
}

Algorithm1Result algorithm1(const TransmitState& init, const ChannelSet& ch, const PhaseStats& stats,
                            const std::vector<CVector>& v, GroupingMode mode, double rho, const SystemConfig& cfg) {
  const auto& alg = cfg.algorithm;
  Algorithm1Result out;
  out.state = init;
  InnerParams params{mode, rho, alg.mu0};
  bool have_point = false;
  double current = -std::numeric_limits<double>::infinity();

  for (int round = 0; round < alg.max_penalty_rounds; ++round) {
    ++out.mu_rounds;
    std::vector<double> phase;
    if (have_point) {
      current = penalized_objective(out.eta, out.state, params);
      phase.push_back(current);
    }
    for (int it = 0; it < alg.max_sca_iterations; ++it) {
      const InnerResult r = build_and_solve_inner(out.state, ch, stats, v, params, cfg);
      ++out.solves;
      out.status = r.status;
      if (!r.ok()) break;
      if (have_point && !(r.objective >= current)) break;  // no ascent: keep the previous iterate
      const double rel = have_point ? (r.objective - current) / std::max(std::abs(current), 1e-6)
                                    : std::numeric_limits<double>::infinity();
      out.state = r.state;
      out.eta = r.eta;
      current = r.objective;
      phase.push_back(current);
      have_point = true;
      out.improved = true;
      if (rel < alg.eps1) break;
    }
    out.trace.push_back(std::move(phase));
    if (!have_point) break;
    out.q = penalty_q(flatten(out.state.S_tilde));
    if (out.q < alg.varsigma1) {
      out.converged = true;
      break;
    }
    params.mu *= alg.c1;
  }
  if (have_point) out.q = penalty_q(flatten(out.state.S_tilde));
  return out;
}

}  // namespace irsug
