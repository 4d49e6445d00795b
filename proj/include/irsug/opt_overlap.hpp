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

#include "irsug/opt_nonoverlap.hpp"

namespace irsug {

/// Overlapping grouping through the relaxed problem: every IU is nominally
/// served in every slot, the transmit side runs without grouping variables,
/// and the grouping is read back from the beamformer support.
SolveReport solve_p2prime(const ChannelSet& ch, const PhaseStats& stats, const SystemConfig& cfg);
SolveReport solve_p2prime(const ChannelSet& ch, const PhaseStats& stats, const SystemConfig& cfg,
                          const FeasibilityReport& feas);

/// Support threshold for a beam to count as active.
double support_threshold(const SystemConfig& cfg, int L);

/// a(k, l) = 1 iff |w_kl|^2 exceeds support_threshold.
RMatrix recover_grouping(const Design& d, const SystemConfig& cfg);

/// Sets a from the support and moves sub-threshold beams into W_E, so slot
/// power and harvested energy are unchanged.
Design apply_support_grouping(Design d, const SystemConfig& cfg);

/// Maps a grouped design to the relaxed form: a = 1, w = a w.
Design drop_grouping(const Design& d);

}  // namespace irsug
