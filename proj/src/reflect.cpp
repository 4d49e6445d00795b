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
#include <numbers>

#include "irsug/opt_nonoverlap.hpp"

namespace irsug {

using conic::ConicProblem;
using conic::LinExpr;
using conic::VarRange;

namespace {

constexpr double kFrozenSlot = 1e-6;   // relative to T
constexpr double kActivePair = 1e-7;   // signal trace relative to tau P
constexpr double kLambdaFloor = 1e-8;
constexpr double kModulusReward = 1.0;  // times eta_q, spread over the entries

// Real vector [Re v; Im v] of the reflect variables, last entry fixed to 1.
std::vector<LinExpr> stacked(const VarRange& re, const VarRange& im, int N) {
  std::vector<LinExpr> x(2 * (N + 1));
  for (int n = 0; n < N; ++n) {
    x[n] = re[n];
    x[N + 1 + n] = im[n];
  }
  x[N] = LinExpr(1.0);
  x[2 * N + 1] = LinExpr(0.0);
  return x;
}

// Re{v^H b} as an affine expression in the reflect variables.
LinExpr re_inner(const VarRange& re, const VarRange& im, const CVector& b) {
  const int N = static_cast<int>(b.size()) - 1;
  LinExpr e(b(N).real());
  for (int n = 0; n < N; ++n) {
    e += b(n).real() * re[n];
    e += b(n).imag() * im[n];
  }
  return e;
}

// Rows F x with F^T F = embed(R), dropping round-off eigenvalues.
std::vector<LinExpr> quad_factor(const CMatrix& R, const std::vector<LinExpr>& x, double scale) {
  const RMatrix Rt = conic::embed_hermitian(R);
  Eigen::SelfAdjointEigenSolver<RMatrix> es(0.5 * (Rt + Rt.transpose()));
  const RVector& ev = es.eigenvalues();
  const double top = ev.size() ? std::max(ev.maxCoeff(), 0.0) : 0.0;
  std::vector<LinExpr> rows;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (!(ev(i) > 1e-12 * top)) continue;
    const double s = std::sqrt(ev(i) / scale);
    LinExpr row;
    for (std::size_t c = 0; c < x.size(); ++c) {
      const double coef = s * es.eigenvectors()(static_cast<Eigen::Index>(c), i);
      if (coef != 0.0) row += coef * x[c];
    }
    row.compact();
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

ReflectStep reflect_qcqp_step(const TransmitState& s, const ChannelSet& ch, const PhaseStats& stats,
                              const std::vector<CVector>& v_q, const SystemConfig& cfg) {
  const int K = s.num_info_users(), L = s.num_slots();
  const int N = ch.num_elements;
  const int J = static_cast<int>(ch.G.size());
  const double T = cfg.duration_s, P = cfg.power_w, E = cfg.energy_j, sigma2 = cfg.noise_w;

  ReflectStep out;
  out.v = v_q;
  out.lambda = RMatrix::Zero(K, L);
  out.eta = state_throughput(ch, stats, s, v_q, cfg).minCoeff();

  std::vector<int> act;
  for (int l = 0; l < L; ++l)
    if (s.tau(l) > kFrozenSlot * T) act.push_back(l);
  if (N == 0 || act.empty()) return out;

  ConicProblem p;
  std::vector<VarRange> re(L), im(L);
  for (int l : act) {
    re[l] = p.add_variable("v_re[" + std::to_string(l) + "]", N);
    im[l] = p.add_variable("v_im[" + std::to_string(l) + "]", N);
    for (int n = 0; n < N; ++n) p.add_second_order({LinExpr(1.0), re[l][n], im[l][n]});
  }
  const int eta_idx = p.add_variable("eta").start;
  std::vector<std::vector<int>> lam_idx(K, std::vector<int>(L, -1));

  // SINR slacks: v^H R_int v <= 2 Re{v^H C v_q} / lambda_q - (v_q^H C v_q) lambda / lambda_q^2 - tau.
  for (int k = 0; k < K; ++k) {
    LinExpr rate = -LinExpr::var(eta_idx);
    for (int l : act) {
      const CMatrix& Sk = s.S_tilde[k][l];
      if (!(Sk.trace().real() > kActivePair * s.tau(l) * P)) continue;
      CMatrix others = s.S_E[l];
      for (int i = 0; i < K; ++i)
        if (i != k) others += s.S_tilde[i][l];
      const CMatrix C = quad_lift(ch.H[k], Sk, stats) / sigma2;
      const CMatrix R = quad_lift(ch.H[k], others, stats) / sigma2;
      const CVector b = C * v_q[l];
      const double sig_q = std::max(v_q[l].dot(b).real(), 0.0);
      const double int_q = std::max(v_q[l].dot(R * v_q[l]).real(), 0.0);
      const double tau = s.tau(l);
      const double lam_q = std::max(sig_q / (int_q + tau), kLambdaFloor);

      const std::string tag = "[" + std::to_string(k) + "," + std::to_string(l) + "]";
      const int lam = p.add_variable("lambda" + tag).start;
      const int w = p.add_variable("w" + tag).start;
      lam_idx[k][l] = lam;
      p.add_nonnegative(LinExpr::var(lam));
      p.add_exponential(LinExpr::var(w) * std::numbers::ln2, LinExpr(1.0), LinExpr(1.0) + LinExpr::var(lam));
      rate += tau * LinExpr::var(w);

      const double scale = std::max(int_q + tau, tau);
      LinExpr slack = (2.0 / lam_q) * re_inner(re[l], im[l], b) - (sig_q / (lam_q * lam_q)) * LinExpr::var(lam) - tau;
      p.add_rotated_second_order(slack * (1.0 / scale), LinExpr(1.0), quad_factor(R, stacked(re[l], im[l], N), scale));
    }
    p.add_nonnegative(rate);
  }

  // Energy harvesting with tangent minorants, normalized by E.
  if (E > 0.0 && J > 0) {
    for (int j = 0; j < J; ++j) {
      LinExpr e(-1.0);
      for (int l = 0; l < L; ++l) {
        CMatrix total = s.S_E[l];
        for (int k = 0; k < K; ++k) total += s.S_tilde[k][l];
        const CMatrix Q = quad_lift(ch.G[j], total, stats) / E;
        const CVector b = Q * v_q[l];
        const double at_q = v_q[l].dot(b).real();
        if (std::find(act.begin(), act.end(), l) == act.end()) {
          e += LinExpr(at_q);
          continue;
        }
        e += 2.0 * re_inner(re[l], im[l], b) - at_q;
      }
      p.add_nonnegative(e);
    }
  }

  // Linearized reward for |v_n|^2 around v_q, steering the step toward unit modulus.
  LinExpr obj = LinExpr::var(eta_idx);
  const double wmod = kModulusReward * std::max(out.eta, 1e-6) / (N * static_cast<double>(act.size()));
  for (int l : act) obj += wmod * re_inner(re[l], im[l], v_q[l]);
  p.maximize(obj);
  const auto sol = conic::solve(p, solver_options(cfg.algorithm));
  out.status = sol.status;
  if (!sol.usable()) return out;
  for (int l : act)
    for (int n = 0; n < N; ++n) out.v[l](n) = Complex(sol.x(re[l].start + n), sol.x(im[l].start + n));
  for (int k = 0; k < K; ++k)
    for (int l : act)
      if (lam_idx[k][l] >= 0) out.lambda(k, l) = sol.x(lam_idx[k][l]);
  out.eta = state_throughput(ch, stats, s, out.v, cfg).minCoeff();
  return out;
}

ReflectScaResult reflect_sca(const TransmitState& s, const ChannelSet& ch, const PhaseStats& stats,
                             const std::vector<CVector>& v_init, const SystemConfig& cfg) {
  ReflectScaResult out;
  out.v = v_init;
  out.eta = state_throughput(ch, stats, s, v_init, cfg).minCoeff();
  out.trace.push_back(out.eta);
  if (ch.num_elements == 0) return out;
  const double E = cfg.energy_j;
  const bool eh_held = !(E > 0.0) || state_energy(ch, stats, s, v_init) >= E * (1.0 - 1e-9);
  for (int it = 0; it < cfg.algorithm.max_sca_iterations; ++it) {
    const ReflectStep step = reflect_qcqp_step(s, ch, stats, out.v, cfg);
    out.status = step.status;
    if (!(step.status == conic::Status::Optimal || step.status == conic::Status::MaxIterations)) break;
    // Iterates stay on the unit circle; the convex step only proposes a direction.
    auto trial = [&](double t, std::vector<CVector>& c) {
      c.resize(out.v.size());
      for (std::size_t l = 0; l < c.size(); ++l) c[l] = project_unit_modulus(out.v[l] + t * (step.v[l] - out.v[l]));
      if (eh_held && state_energy(ch, stats, s, c) < E * (1.0 - 1e-9)) return -std::numeric_limits<double>::infinity();
      return state_throughput(ch, stats, s, c, cfg).minCoeff();
    };
    std::vector<CVector> v, c;
    double eta = -std::numeric_limits<double>::infinity();
    double t = 1.0;
    for (; t > 1e-3; t *= 0.5) {
      const double e = trial(t, c);
      if (e > out.eta) {
        v = c;
        eta = e;
        break;
      }
    }
    if (v.empty()) break;  // no ascent: keep the previous iterate
    // The linearization anchors the step near the current point; extend it
    // while the exact objective keeps rising.
    if (t == 1.0)
      for (t = 2.0; t <= 64.0; t *= 2.0) {
        const double e = trial(t, c);
        if (!(e > eta)) break;
        v = c;
        eta = e;
      }
    const double rel = (eta - out.eta) / std::max(std::abs(out.eta), 1e-6);
    out.v = std::move(v);
    out.eta = eta;
    out.trace.push_back(out.eta);
    if (rel < cfg.algorithm.eps1) break;
  }
  return out;
}

}  // namespace irsug
