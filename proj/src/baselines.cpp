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

#include "irsug/baselines.hpp"

#include <random>

namespace irsug {

const char* to_string(Scheme s) {
  switch (s) {
    case Scheme::NonOverlap: return "nonoverlap";
    case Scheme::Overlap: return "overlap";
    case Scheme::RandomUG: return "random";
    case Scheme::NoUG: return "noug";
  }
  return "unknown";
}

Scheme scheme_from_string(const std::string& name) {
  for (Scheme s : {Scheme::NonOverlap, Scheme::Overlap, Scheme::RandomUG, Scheme::NoUG})
    if (name == to_string(s)) return s;
  throw InvalidInput("unknown scheme '" + name + "' (expected nonoverlap, overlap, random or noug)");
}

namespace {

SchemeResult infeasible(Scheme s, const ChannelSet& ch, const SystemConfig& cfg, int L, const std::string& why) {
  SchemeResult r;
  r.scheme = s;
  r.report.design = empty_design(static_cast<int>(ch.H.size()), L, ch.num_antennas, ch.num_elements, cfg.duration_s);
  r.report.feasible_start = false;
  r.report.message = why;
  return r;
}

bool usable(const SolveReport& r) { return r.feasible_start && !r.degenerate; }

}  // namespace

SchemeResult random_ug_solve(const ChannelSet& ch, const PhaseStats& stats, const SystemConfig& cfg,
                             std::uint64_t seed, const FeasibilityReport& feas) {
  const int K = static_cast<int>(ch.H.size()), L = cfg.max_groups;
  if (!feas.feasible()) return infeasible(Scheme::RandomUG, ch, cfg, L, "energy requirement not attainable");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, L);  // L means unassigned
  SchemeResult out;
  out.scheme = Scheme::RandomUG;
  for (int draw = 1; draw <= kMaxRandomDraws; ++draw) {
    RMatrix a = RMatrix::Zero(K, L);
    bool complete = true;
    for (int k = 0; k < K; ++k) {
      const int l = pick(rng);
      if (l == L)
        complete = false;
      else
        a(k, l) = 1.0;
    }
    out.draws = draw;
    if (!complete) continue;
    SolveReport rep = solve_grouped(ch, stats, cfg, feas, GroupingMode::Fixed, a);
    if (!usable(rep)) continue;
    out.feasible = true;
    out.report = std::move(rep);
    return out;
  }
  SchemeResult r = infeasible(Scheme::RandomUG, ch, cfg, L, "no usable random grouping within the draw limit");
  r.draws = kMaxRandomDraws;
  r.exhausted = true;
  return r;
}

SchemeResult random_ug_solve(const ChannelSet& ch, const PhaseStats& stats, const SystemConfig& cfg,
                             std::uint64_t seed) {
  return random_ug_solve(ch, stats, cfg, seed, check_feasibility(ch, stats, cfg));
}

SchemeResult no_ug_solve(const ChannelSet& ch, const PhaseStats& stats, const SystemConfig& cfg) {
  SystemConfig one = cfg;
  one.max_groups = 1;
  const int K = static_cast<int>(ch.H.size());
  const FeasibilityReport feas = check_feasibility(ch, stats, one);
  if (!feas.feasible()) return infeasible(Scheme::NoUG, ch, one, 1, "energy requirement not attainable in one slot");
  SchemeResult r;
  r.scheme = Scheme::NoUG;
  r.report = solve_grouped(ch, stats, one, feas, GroupingMode::Fixed, RMatrix::Ones(K, 1));
  r.feasible = usable(r.report);
  return r;
}

SchemeResult run_scheme(Scheme s, const ChannelSet& ch, const PhaseStats& stats, const SystemConfig& cfg,
                        std::uint64_t seed, const std::optional<FeasibilityReport>& feas) {
  if (s == Scheme::NoUG) return no_ug_solve(ch, stats, cfg);
  const FeasibilityReport f = feas ? *feas : check_feasibility(ch, stats, cfg);
  if (s == Scheme::RandomUG) return random_ug_solve(ch, stats, cfg, seed, f);
  if (!f.feasible()) return infeasible(s, ch, cfg, cfg.max_groups, "energy requirement not attainable");
  SchemeResult r;
  r.scheme = s;
  r.report = s == Scheme::NonOverlap ? solve_p1(ch, stats, cfg, f) : solve_p2prime(ch, stats, cfg, f);
  r.feasible = usable(r.report);
  return r;
}

NonrobustResult nonrobust_variant(Scheme s, const ChannelSet& ch, const SystemConfig& cfg, std::uint64_t seed) {
  SystemConfig nominal_cfg = cfg;
  nominal_cfg.robust = false;
  const PhaseStats nominal = phase_error_moment_matrix(ch.num_elements, false);
  const PhaseStats truth = phase_error_moment_matrix(ch.num_elements, true);
  NonrobustResult r;
  r.nominal = run_scheme(s, ch, nominal, nominal_cfg, seed);
  r.realized = expected_metrics(r.nominal.report.design, ch, truth, cfg);
  // Degenerate designs are still returned designs and are audited too.
  r.eh_violation = r.nominal.report.feasible_start && !ch.G.empty() && cfg.energy_j > 0.0 && r.realized.eh_margin < -1e-9;
  return r;
}

}  // namespace irsug
