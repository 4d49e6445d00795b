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
#include "irsug/model.hpp"

namespace irsug {

// Energy-only design: time-scaled energy covariances, slot durations and
// reflect vectors, plus the achieved minimum harvested energy (J).
struct EnergyDesign {
  std::vector<CMatrix> S_E;
  RVector tau;
  std::vector<CVector> v;
  double delta = 0.0;

  /// W_E = S_E / tau for tau > 0, else 0.
  std::vector<CMatrix> energy_covariances() const;
};

struct EnergySdpResult {
  std::vector<CMatrix> S_E;
  RVector tau;
  double delta = 0.0;
  conic::Status status = conic::Status::Optimal;
};

/// Maximizes the minimum harvested energy over (S_E, tau) for fixed v.
EnergySdpResult solve_energy_time_sdp(const ChannelSet& ch, const PhaseStats& stats, const std::vector<CVector>& v,
                                      const SystemConfig& cfg);

struct ReflectEnergyResult {
  std::vector<CVector> v;
  double delta = 0.0;
  std::vector<double> trace;  // exact delta after each SCA step
  conic::Status status = conic::Status::Optimal;
};

/// Minimum over EUs of sum_l v_l^H Q_{j,l} v_l (J).
double min_energy(const ChannelSet& ch, const PhaseStats& stats, const std::vector<CMatrix>& S_E,
                  const std::vector<CVector>& v);

/// SCA over the reflect vectors for fixed (S_E, tau).
ReflectEnergyResult reflect_energy_sca(const ChannelSet& ch, const PhaseStats& stats, const std::vector<CMatrix>& S_E,
                                       const RVector& tau, const std::vector<CVector>& v_init,
                                       const SystemConfig& cfg);

enum class Verdict { Feasible, Infeasible };

struct FeasibilityReport {
  Verdict verdict = Verdict::Infeasible;
  bool heuristic = false;  // an infeasible verdict is not a certificate
  EnergyDesign design;     // unit-modulus reflect vectors
  std::vector<double> trace;  // delta per outer iteration (relaxed reflect vectors)
  int iterations = 0;
  std::string note;
  bool feasible() const { return verdict == Verdict::Feasible; }
};

FeasibilityReport check_feasibility(const ChannelSet& ch, const PhaseStats& stats, const SystemConfig& cfg);

/// Projects each entry but the last to unit modulus (zero entries map to 1).
CVector project_unit_modulus(const CVector& v);

conic::SolverOptions solver_options(const AlgorithmSettings& a);

}  // namespace irsug
