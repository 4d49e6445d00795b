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

#include <vector>

#include "irsug/opt_core.hpp"

namespace irsug {

// A complete transmit/reflect design: grouping bits, slot durations,
// beamformers, energy covariances and unit-modulus reflect vectors.
struct Design {
  RMatrix a;                 // K x L, entries in {0, 1}
  RVector tau;               // L
  Grid<CVector> w;           // K x L, zero where a = 0
  std::vector<CMatrix> W_E;  // L
  std::vector<CVector> v;    // L
  double eta = 0.0;          // minimum expected throughput (bits)

  int num_info_users() const { return static_cast<int>(a.rows()); }
  int num_slots() const { return static_cast<int>(a.cols()); }
};

/// Zero design with the given shape (a = 0, w = 0, W_E = 0, v = ones).
Design empty_design(int K, int L, int M, int N, double T);

}  // namespace irsug
