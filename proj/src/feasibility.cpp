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

#include "irsug/feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace irsug {

using conic::ConicProblem;
using conic::HermitianVar;
using conic::LinExpr;

conic::SolverOptions solver_options(const AlgorithmSettings& a) {
  conic::SolverOptions o;
  o.tolerance = a.conic_tolerance;
  o.max_iterations = a.conic_max_iterations;
  return o;
}

CVector project_unit_modulus(const CVector& v) {
  CVector out = v;
  for (Eigen::Index n = 0; n + 1 < v.size(); ++n) {
    const double m = std::abs(v(n));
    out(n) = m > 0.0 ? v(n) / m : Complex(1.0, 0.0);
  }
  if (v.size() > 0) out(v.size() - 1) = 1.0;
  return out;
}

std::vector<CMatrix> EnergyDesign::energy_covariances() const {
  std::vector<CMatrix> W;
  W.reserve(S_E.size());
  for (std::size_t l = 0; l < S_E.size(); ++l)
    W.push_back(tau(l) > 0.0 ? CMatrix(S_E[l] / tau(l)) : CMatrix::Zero(S_E[l].rows(), S_E[l].cols()));
  return W;
}

double min_energy(const ChannelSet& ch, const PhaseStats& stats, const std::vector<CMatrix>& S_E,
                  const std::vector<CVector>& v) {
  if (ch.G.empty()) return std::numeric_limits<double>::infinity();
  double best = std::numeric_limits<double>::infinity();
  for (const auto& G : ch.G) {
    double e = 0.0;
    for (std::size_t l = 0; l < S_E.size(); ++l) e += (effective_matrix(G, v[l], stats) * S_E[l]).trace().real();
    best = std::min(best, e);
  }
  return best;
}

EnergySdpResult solve_energy_time_sdp(const ChannelSet& ch, const PhaseStats& stats, const std::vector<CVector>& v,
                                      const SystemConfig& cfg) {
  const int L = static_cast<int>(v.size());
  const int M = ch.num_antennas;
  const double T = cfg.duration_s, P = cfg.power_w;
  EnergySdpResult out;
  out.S_E.assign(L, CMatrix::Zero(M, M));
  out.tau = RVector::Constant(L, T / std::max(L, 1));
  if (L == 0) throw InvalidInput("solve_energy_time_sdp: no slots");
  if (ch.G.empty()) {
    out.delta = std::numeric_limits<double>::infinity();
    return out;
  }
  if (!(P > 0.0)) return out;

  std::vector<std::vector<CMatrix>> Y(ch.G.size());
  double ymax = 0.0;
  for (std::size_t j = 0; j < ch.G.size(); ++j)
    for (int l = 0; l < L; ++l) {
      Y[j].push_back(effective_matrix(ch.G[j], v[l], stats));
      ymax = std::max(ymax, spectral_norm_top(Y[j].back(), true).norm);
    }
  if (!(ymax > 0.0)) return out;
  const double scale = P * T * ymax;

  ConicProblem p;
  std::vector<HermitianVar> S(L);
  for (int l = 0; l < L; ++l) S[l] = p.add_hermitian("S_E[" + std::to_string(l) + "]", M);
  const auto tau = p.add_variable("tau", L);
  const auto d = p.add_variable("delta");
  LinExpr total_time(T);
  for (int l = 0; l < L; ++l) {
    p.add_hermitian_psd(S[l]);
    p.add_nonnegative(tau[l] - S[l].trace());  // normalized power: tr S_E / P <= tau
    p.add_nonnegative(tau[l]);
    total_time -= tau[l];
  }
  p.add_nonnegative(total_time);
  for (std::size_t j = 0; j < ch.G.size(); ++j) {
    LinExpr e = -d[0];
    for (int l = 0; l < L; ++l) e += S[l].trace_with(Y[j][l] * (P / scale));
    p.add_nonnegative(e);
  }
  p.maximize(d[0]);
  const auto sol = conic::solve(p, solver_options(cfg.algorithm));
  out.status = sol.status;
  if (!sol.usable()) return out;
  for (int l = 0; l < L; ++l) {
    out.tau(l) = std::max(0.0, sol.x(tau.start + l));
    out.S_E[l] = hermitian_part(S[l].decode(sol.x) * P);
  }
  out.delta = min_energy(ch, stats, out.S_E, v);
  return out;
}

ReflectEnergyResult reflect_energy_sca(const ChannelSet& ch, const PhaseStats& stats, const std::vector<CMatrix>& S_E,
                                       const RVector& tau, const std::vector<CVector>& v_init,
                                       const SystemConfig& cfg) {
  ReflectEnergyResult out;
  out.v = v_init;
  out.delta = min_energy(ch, stats, S_E, v_init);
  const int N = ch.num_elements;
  const int L = static_cast<int>(v_init.size());
  const double T = cfg.duration_s;
  std::vector<int> active;
  for (int l = 0; l < L; ++l)
    if (tau(l) > 1e-6 * T && S_E[l].trace().real() > 1e-14 * cfg.power_time()) active.push_back(l);
  if (N == 0 || active.empty() || ch.G.empty()) return out;

  const int J = static_cast<int>(ch.G.size());
  std::vector<std::vector<CMatrix>> Q(J, std::vector<CMatrix>(L));
  for (int j = 0; j < J; ++j)
    for (int l = 0; l < L; ++l) Q[j][l] = quad_lift(ch.G[j], S_E[l], stats);

  auto exact = [&](const std::vector<CVector>& v) {
    double best = std::numeric_limits<double>::infinity();
    for (int j = 0; j < J; ++j) {
      double e = 0.0;
      for (int l = 0; l < L; ++l) e += v[l].dot(Q[j][l] * v[l]).real();
      best = std::min(best, e);
    }
    return best;
  };
  out.delta = exact(out.v);

  for (int it = 0; it < cfg.algorithm.max_sca_iterations; ++it) {
    const std::vector<CVector>& vq = out.v;
    const double scale = std::max(std::abs(out.delta), 1e-300);
    ConicProblem p;
    std::vector<conic::VarRange> re(L), im(L);
    for (int l : active) {
      re[l] = p.add_variable("v_re[" + std::to_string(l) + "]", N);
      im[l] = p.add_variable("v_im[" + std::to_string(l) + "]", N);
      for (int n = 0; n < N; ++n) p.add_second_order({LinExpr(1.0), re[l][n], im[l][n]});
    }
    const auto d = p.add_variable("delta");
    RVector x0 = RVector::Zero(p.num_variables());
    for (int l : active)
      for (int n = 0; n < N; ++n) {
        x0(re[l].start + n) = 0.9 * vq[l](n).real();
        x0(im[l].start + n) = 0.9 * vq[l](n).imag();
      }
    double dmin = std::numeric_limits<double>::infinity();
    for (int j = 0; j < J; ++j) {
      LinExpr e = -d[0];
      for (int l = 0; l < L; ++l) {
        const bool is_active = std::find(active.begin(), active.end(), l) != active.end();
        if (!is_active) {
          e += LinExpr(vq[l].dot(Q[j][l] * vq[l]).real() / scale);
          continue;
        }
        const CVector b = Q[j][l] * vq[l];
        LinExpr f(2.0 * b(N).real() - vq[l].dot(b).real());
        for (int n = 0; n < N; ++n) {
          f += 2.0 * b(n).real() * re[l][n];
          f += 2.0 * b(n).imag() * im[l][n];
        }
        e += f * (1.0 / scale);
      }
      dmin = std::min(dmin, (e + d[0]).evaluate(x0));
      p.add_nonnegative(e);
    }
    x0(d.start) = dmin - 1.0;
    p.maximize(d[0]);
    auto opts = solver_options(cfg.algorithm);
    opts.initial_point = x0;
    const auto sol = conic::solve(p, opts);
    out.status = sol.status;
    if (!sol.usable()) break;
    std::vector<CVector> vn = vq;
    for (int l : active)
      for (int n = 0; n < N; ++n) vn[l](n) = Complex(sol.x(re[l].start + n), sol.x(im[l].start + n));
    const double dn = exact(vn);
    if (!(dn > out.delta)) break;  // no ascent: keep the previous iterate
    const double rel = (dn - out.delta) / std::max(std::abs(out.delta), 1e-300);
    out.v = std::move(vn);
    out.delta = dn;
    out.trace.push_back(dn);
    if (rel < cfg.algorithm.eps1) break;
  }
  return out;
}

FeasibilityReport check_feasibility(const ChannelSet& ch, const PhaseStats& stats, const SystemConfig& cfg) {
  FeasibilityReport rep;
  const int L = cfg.max_groups;
  const double E = cfg.energy_j;
  std::vector<CVector> v(L, unit_reflect(ch.num_elements));

  auto sdp = solve_energy_time_sdp(ch, stats, v, cfg);
  rep.design = {sdp.S_E, sdp.tau, v, sdp.delta};
  rep.trace.push_back(sdp.delta);
  if (ch.G.empty() || sdp.delta >= E) {
    rep.verdict = Verdict::Feasible;
    return rep;
  }
  if (sdp.status != conic::Status::Optimal) rep.note = "energy SDP not optimal";

  double delta = sdp.delta;
  std::vector<CMatrix> S_E = sdp.S_E;
  RVector tau = sdp.tau;
  bool converged = false;
  for (int it = 0; it < cfg.algorithm.max_feasibility_iterations; ++it) {
    rep.iterations = it + 1;
    const auto refl = reflect_energy_sca(ch, stats, S_E, tau, v, cfg);
    const auto next = solve_energy_time_sdp(ch, stats, refl.v, cfg);
    if (!(next.delta >= delta)) {
      converged = true;  // no ascent from either block
      break;
    }
    const double rel = (next.delta - delta) / std::max(std::abs(delta), 1e-300);
    v = refl.v;
    S_E = next.S_E;
    tau = next.tau;
    delta = next.delta;
    rep.trace.push_back(delta);
    std::vector<CVector> vp(L);
    for (int l = 0; l < L; ++l) vp[l] = project_unit_modulus(v[l]);
    const double dp = min_energy(ch, stats, S_E, vp);
    if (dp >= E) {
      rep.verdict = Verdict::Feasible;
      rep.design = {S_E, tau, vp, dp};
      return rep;
    }
    if (rel < cfg.algorithm.eps1) {
      converged = true;
      break;
    }
  }

  // Final unit-modulus projection followed by a last energy/time solve.
  std::vector<CVector> vp(L);
  for (int l = 0; l < L; ++l) vp[l] = project_unit_modulus(v[l]);
  const auto fin = solve_energy_time_sdp(ch, stats, vp, cfg);
  if (fin.delta >= min_energy(ch, stats, S_E, vp))
    rep.design = {fin.S_E, fin.tau, vp, fin.delta};
  else
    rep.design = {S_E, tau, vp, min_energy(ch, stats, S_E, vp)};
  rep.verdict = rep.design.delta >= E ? Verdict::Feasible : Verdict::Infeasible;
  rep.heuristic = rep.verdict == Verdict::Infeasible;
  if (!converged) rep.note = "iteration cap reached";
  return rep;
}

}  // namespace irsug
