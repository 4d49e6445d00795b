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

#include "irsug/opt_overlap.hpp"

#include "irsug/eval.hpp"

namespace irsug {

double support_threshold(const SystemConfig& cfg, int L) {
  return 1e-8 * cfg.power_time() / std::max(L, 1);
}

RMatrix recover_grouping(const Design& d, const SystemConfig& cfg) {
  const int K = d.num_info_users(), L = d.num_slots();
  const double thr = support_threshold(cfg, L);
  RMatrix a = RMatrix::Zero(K, L);
  for (int k = 0; k < K; ++k)
    for (int l = 0; l < L; ++l)
      if (d.w[k][l].squaredNorm() > thr) a(k, l) = 1.0;
  return a;
}

Design apply_support_grouping(Design d, const SystemConfig& cfg) {
  const RMatrix a = recover_grouping(d, cfg);
  for (int k = 0; k < d.num_info_users(); ++k)
    for (int l = 0; l < d.num_slots(); ++l) {
      if (a(k, l) > 0.5) continue;
      if (d.a(k, l) > 0.5) d.W_E[l] += d.w[k][l] * d.w[k][l].adjoint();
      d.w[k][l].setZero();
    }
  d.a = a;
  return d;
}

Design drop_grouping(const Design& d) {
  Design out = d;
  for (int k = 0; k < d.num_info_users(); ++k)
    for (int l = 0; l < d.num_slots(); ++l) {
      out.w[k][l] = d.a(k, l) * d.w[k][l];
      out.a(k, l) = 1.0;
    }
  return out;
}

SolveReport solve_p2prime(const ChannelSet& ch, const PhaseStats& stats, const SystemConfig& cfg,
                          const FeasibilityReport& feas) {
  if (!feas.feasible())
    throw InvalidInput("solve_p2prime: the instance failed the energy feasibility check; run check_feasibility first");
  const int K = static_cast<int>(ch.H.size());
  SolveReport rep =
      solve_grouped(ch, stats, cfg, feas, GroupingMode::Fixed, RMatrix::Ones(K, cfg.max_groups));
  if (!rep.feasible_start) return rep;
  rep.design = apply_support_grouping(std::move(rep.design), cfg);
  rep.degenerate = false;
  for (int k = 0; k < K; ++k)
    if (rep.design.a.row(k).sum() < 0.5) rep.degenerate = true;
  rep.design.eta = rep.degenerate ? 0.0 : expected_metrics(rep.design, ch, stats, cfg).eta;
  return rep;
}

SolveReport solve_p2prime(const ChannelSet& ch, const PhaseStats& stats, const SystemConfig& cfg) {
  return solve_p2prime(ch, stats, cfg, check_feasibility(ch, stats, cfg));
}

}  // namespace irsug
