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

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "irsug/eval.hpp"
#include "irsug/opt_overlap.hpp"

namespace irsug {

enum class Scheme { NonOverlap, Overlap, RandomUG, NoUG };

const char* to_string(Scheme s);
/// Accepts nonoverlap, overlap, random, noug. Throws InvalidInput otherwise.
Scheme scheme_from_string(const std::string& name);

// One scheme run. Infeasible or failed runs keep an empty design with eta = 0.
struct SchemeResult {
  Scheme scheme = Scheme::NonOverlap;
  bool feasible = false;  // energy feasibility verdict for the scheme's slot count
  SolveReport report;
  int draws = 0;          // random grouping draws used
  bool exhausted = false; // random grouping ran out of draws
  double eta() const { return feasible ? report.design.eta : 0.0; }
};

constexpr int kMaxRandomDraws = 20;

/// Non-overlapping grouping drawn at random: each IU picks one of the L slots
/// or none with equal probability. Draws leaving an IU unserved or whose
/// frozen-grouping solve fails are redrawn, up to kMaxRandomDraws.
SchemeResult random_ug_solve(const ChannelSet& ch, const PhaseStats& stats, const SystemConfig& cfg,
                             std::uint64_t seed);
SchemeResult random_ug_solve(const ChannelSet& ch, const PhaseStats& stats, const SystemConfig& cfg,
                             std::uint64_t seed, const FeasibilityReport& feas);

/// Single slot, every IU served, tau = T.
SchemeResult no_ug_solve(const ChannelSet& ch, const PhaseStats& stats, const SystemConfig& cfg);

/// Dispatches to the scheme's solver, including its feasibility check.
/// `feas` may carry a check already run for cfg.max_groups slots.
SchemeResult run_scheme(Scheme s, const ChannelSet& ch, const PhaseStats& stats, const SystemConfig& cfg,
                        std::uint64_t seed, const std::optional<FeasibilityReport>& feas = std::nullopt);

struct NonrobustResult {
  SchemeResult nominal;    // solved with the all-ones phase statistics
  MetricsReport realized;  // the same design under the true phase-error statistics
  bool eh_violation = false;
  double realized_eta() const { return nominal.feasible ? realized.eta : 0.0; }
};

/// Solves while ignoring phase errors, then evaluates the design under the
/// true statistics and flags any EU below E.
NonrobustResult nonrobust_variant(Scheme s, const ChannelSet& ch, const SystemConfig& cfg, std::uint64_t seed);

}  // namespace irsug
