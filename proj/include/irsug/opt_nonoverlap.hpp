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

#include <string>
#include <vector>

#include "irsug/config.hpp"
#include "irsug/conic.hpp"
#include "irsug/design.hpp"
#include "irsug/feasibility.hpp"
#include "irsug/model.hpp"

namespace irsug {

// Transmit-side block in time-scaled form: S_tilde = a S, S = tau W, S_E = tau W_E.
struct TransmitState {
  Grid<CMatrix> S_tilde;     // K x L
  Grid<CMatrix> S;           // K x L
  std::vector<CMatrix> S_E;  // L
  RMatrix a;                 // K x L, in [0, 1]
  RVector tau;               // L

  int num_info_users() const { return static_cast<int>(a.rows()); }
  int num_slots() const { return static_cast<int>(a.cols()); }
};

// How the grouping variables enter the transmit problem.
enum class GroupingMode {
  Penalized,  // a continuous in [0, 1], sum_l a <= 1, binary penalty
  Fixed,      // a frozen at the state's binary values; a = 1 pairs only
};

struct InnerParams {
  GroupingMode mode = GroupingMode::Penalized;
  double rho = 0.0;
  double mu = 0.0;
};

/// Exact per-IU throughput sum_l (f - g) of a transmit state under the
/// reflect vectors v (bits). Slots with tau below 1e-12 T contribute 0.
RVector state_throughput(const ChannelSet& ch, const PhaseStats& stats, const TransmitState& s,
                         const std::vector<CVector>& v, const SystemConfig& cfg);

/// Minimum harvested energy of a transmit state (J); +inf when J = 0.
double state_energy(const ChannelSet& ch, const PhaseStats& stats, const TransmitState& s,
                    const std::vector<CVector>& v);

/// eta - rho h(a) - mu q(S_tilde) evaluated exactly.
double penalized_objective(double eta, const TransmitState& s, const InnerParams& p);

struct InnerResult {
  TransmitState state;
  double eta = 0.0;        // exact min throughput at the new state
  double objective = 0.0;  // exact penalized objective
  conic::Status status = conic::Status::NumericalFailure;
  bool ok() const { return status == conic::Status::Optimal || status == conic::Status::MaxIterations; }
};

/// One surrogate transmit program around `point` for fixed v.
InnerResult build_and_solve_inner(const TransmitState& point, const ChannelSet& ch, const PhaseStats& stats,
                                  const std::vector<CVector>& v, const InnerParams& params, const SystemConfig& cfg);

struct Algorithm1Result {
  TransmitState state;
  double eta = 0.0;
  double q = 0.0;
  int solves = 0;
  int mu_rounds = 0;
  bool converged = false;                  // q below the rank threshold
  bool improved = false;                   // at least one accepted iterate
  std::vector<std::vector<double>> trace;  // penalized objective per mu phase
  conic::Status status = conic::Status::Optimal;
};

/// Inner SCA with geometric growth of the rank penalty.
Algorithm1Result algorithm1(const TransmitState& init, const ChannelSet& ch, const PhaseStats& stats,
                            const std::vector<CVector>& v, GroupingMode mode, double rho, const SystemConfig& cfg);

struct ReflectStep {
  std::vector<CVector> v;
  RMatrix lambda;   // K x L surrogate SINR slacks (0 where unused)
  double eta = 0.0; // exact min throughput at v
  conic::Status status = conic::Status::Optimal;
};

/// One convex reflect program around v_q.
ReflectStep reflect_qcqp_step(const TransmitState& s, const ChannelSet& ch, const PhaseStats& stats,
                              const std::vector<CVector>& v_q, const SystemConfig& cfg);

struct ReflectScaResult {
  std::vector<CVector> v;
  double eta = 0.0;
  std::vector<double> trace;  // exact eta, starting with the value at v_init
  conic::Status status = conic::Status::Optimal;
};

/// Reflect-side SCA: repeats reflect_qcqp_step until the relative increase is below eps1.
ReflectScaResult reflect_sca(const TransmitState& s, const ChannelSet& ch, const PhaseStats& stats,
                             const std::vector<CVector>& v_init, const SystemConfig& cfg);

struct BcdRow {
  double rho = 0.0;
  int iteration = 0;
  double eta = 0.0;
  double h = 0.0;
  double q = 0.0;
  double objective = 0.0;  // eta - rho h
};

struct SolveTrace {
  std::vector<BcdRow> bcd;
  std::vector<std::vector<double>> bcd_objective;  // per rho phase
  std::vector<std::vector<double>> transmit;       // algorithm-1 phases
  std::vector<std::vector<double>> reflect;        // reflect SCA runs
  std::vector<double> feasibility;
  int conic_solves = 0;
};

struct SolveReport {
  Design design;
  SolveTrace trace;
  bool feasible_start = true;
  bool converged = false;
  bool degenerate = false;            // some IU is served in no slot
  bool projection_degraded = false;   // EH audit failed after unit-modulus projection
  bool polished = false;              // transmit side re-solved at the projected v
  double pre_projection_margin = 0.0; // EH margin before projection (J)
  double final_h = 0.0;
  double final_q = 0.0;
  double max_rank_ratio = 0.0;        // worst lambda2 / lambda1 over recovered beams
  double max_a_distance = 0.0;        // worst distance of a to {0, 1} before rounding
  std::string message;
};

using P1Solution = Design;

/// Default warm start: round-robin grouping, uniform slots, MRT beams and the
/// energy design of the feasibility check.
TransmitState initial_state(const ChannelSet& ch, const EnergyDesign& energy, const RMatrix& a0,
                            const SystemConfig& cfg);

/// Block coordinate ascent over (transmit, reflect) for a given mode. In
/// Penalized mode the binary penalty grows until h falls below varsigma2.
SolveReport solve_grouped(const ChannelSet& ch, const PhaseStats& stats, const SystemConfig& cfg,
                          const FeasibilityReport& feas, GroupingMode mode, const RMatrix& a0);

/// Non-overlapping grouping solver. Throws InvalidInput when the instance
/// fails the energy feasibility check.
SolveReport solve_p1(const ChannelSet& ch, const PhaseStats& stats, const SystemConfig& cfg);
SolveReport solve_p1(const ChannelSet& ch, const PhaseStats& stats, const SystemConfig& cfg,
                     const FeasibilityReport& feas);

/// Round-robin assignment a_{k, k mod L} = 1.
RMatrix round_robin_grouping(int K, int L);

}  // namespace irsug
