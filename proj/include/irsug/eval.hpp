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
#include <functional>
#include <string>
#include <vector>

#include "irsug/config.hpp"
#include "irsug/design.hpp"
#include "irsug/model.hpp"

namespace irsug {

struct MetricsReport {
  RVector throughput;   // K, bits
  double eta = 0.0;     // min of throughput
  RVector energy;       // J, joules
  double eh_margin = 0.0;  // min_j energy - E; +inf without EUs
  RVector slot_power;   // L, watts
  int active_slots = 0;    // tau > 1e-6 T
  double sum_a = 0.0;
  RMatrix sinr;         // K x L expected-ratio SINR
};

/// Closed-form expected metrics under the phase-error statistics.
MetricsReport expected_metrics(const Design& d, const ChannelSet& ch, const PhaseStats& stats, const SystemConfig& cfg);

struct SampledMetrics {
  RVector throughput_mean_log;   // K: sample mean of sum_l tau log2(1 + gamma)
  RVector throughput_mean_log_se;
  RVector throughput_ratio;      // K: sum_l tau log2(1 + mean(signal) / mean(interference + noise))
  double eta_mean_log = 0.0;
  double eta_ratio = 0.0;
  RMatrix signal_mean, signal_se;          // K x L
  RMatrix denominator_mean, denominator_se;  // K x L, interference plus noise
  RVector energy_mean, energy_se;          // J
  int samples = 0;
};

/// Monte Carlo over i.i.d. phase errors uniform on [-width/2, width/2]
/// (width = pi by default). Sample s uses its own generator seeded from
/// (seed, s), and sums are reduced pairwise in a fixed order, so results do
/// not depend on the worker count.
SampledMetrics sampled_metrics(const Design& d, const ChannelSet& ch, const SystemConfig& cfg, int n_samples,
                               std::uint64_t seed, double width = 3.14159265358979323846, int workers = 1);

struct PhaseMomentEstimate {
  CMatrix mean;     // sample mean of v v^H
  RMatrix se_real;  // standard errors of the real parts
  RMatrix se_imag;
};

/// Monte Carlo estimate of E{v v^H} for v = [exp(j theta); 1] with theta
/// i.i.d. uniform on [-pi/2, pi/2].
PhaseMomentEstimate sampled_phase_moment(int N, int n_samples, std::uint64_t seed, int workers = 1);

/// Fixed-order pairwise sum.
double pairwise_sum(const double* x, std::size_t n);

struct DesignAudit {
  bool ok = true;
  double eh_margin = 0.0;      // min_j energy - E
  double power_excess = 0.0;   // max_l (slot power - P) / P
  double time_excess = 0.0;    // sum tau - T
  double modulus_error = 0.0;  // max | |v_n| - 1 |
  double max_groups_per_iu = 0.0;
  bool binary = true;
  std::vector<std::string> failures;
};

/// Recomputes every constraint of the design from the channels.
DesignAudit audit_design(const Design& d, const ChannelSet& ch, const PhaseStats& stats, const SystemConfig& cfg,
                         bool non_overlapping);

// Continuous solver run with the grouping frozen to a candidate; returns eta.
using FrozenSolver = std::function<double(const RMatrix& a)>;

struct OracleTable {
  std::vector<RMatrix> candidates;
  std::vector<double> values;
  int best = -1;
  double best_value = 0.0;
};

/// Enumerates all groupings (non-overlapping: each IU in one slot or none;
/// overlapping: every support pattern). Requires K <= 4 and L <= 2.
OracleTable brute_force_grouping_oracle(int K, int L, bool non_overlapping, const FrozenSolver& solve);

/// Oracle with the continuous block-coordinate solver behind each candidate.
/// Candidates leaving an IU unserved score 0 without a solve.
OracleTable brute_force_grouping_oracle(const ChannelSet& ch, const PhaseStats& stats, const SystemConfig& cfg,
                                        bool non_overlapping);

}  // namespace irsug
