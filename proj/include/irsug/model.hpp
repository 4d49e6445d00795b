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
#include <vector>

#include "irsug/config.hpp"
#include "irsug/numerics.hpp"

namespace irsug {

// Composite channels. Rows 0..N-1 hold the cascaded AP-IRS-user link
// diag(h_r^H) F, row N holds the conjugated direct link.
struct ChannelSet {
  int num_antennas = 0;
  int num_elements = 0;
  std::vector<CMatrix> H;  // one (N+1) x M matrix per information user
  std::vector<CMatrix> G;  // one (N+1) x M matrix per energy user
};

// Second-order moments of the random phase-error vector [e^{j t_1} ... e^{j t_N}, 1].
struct PhaseStats {
  RMatrix Z;
  bool robust = true;
  int num_elements() const { return static_cast<int>(Z.rows()) - 1; }
};

/// Large-scale power gain C0 * d^-alpha with C0 given in dB at 1 m.
double path_loss(double c0_db, double distance_m, double alpha);

/// Uniform linear array response with half-wavelength spacing,
/// [e^{j pi m cos(psi)}]_m, where cos(psi) is the projection of the unit
/// direction onto the array axis.
CVector ula_response(int n, double cos_angle);

/// Deterministic channel draw for one seed.
ChannelSet generate_channels(const SystemConfig& cfg, std::uint64_t seed);

PhaseStats phase_error_moment_matrix(int num_elements, bool robust);

/// channel^H diag(v) Z diag(v)^H channel.
CMatrix effective_matrix(const CMatrix& channel, const CVector& v, const PhaseStats& stats);

/// Quadratic-form lift: returns Q with v^H Q v = tr(effective_matrix(v) * covariance).
/// Covariances whose trace is at most zero_trace are treated as zero.
CMatrix quad_lift(const CMatrix& channel, const CMatrix& covariance, const PhaseStats& stats,
                  double zero_trace = 0.0);

/// Unit-modulus reflect vector of length N+1 with all phases zero.
CVector unit_reflect(int num_elements);

}  // namespace irsug
