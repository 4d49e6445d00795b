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
#include <string>
#include <vector>

namespace irsug {

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

double distance(const Point3& a, const Point3& b);

/// Placement of the access point, the IRS and the two user disks (meters).
struct Geometry {
  Point3 ap{3.0, 0.0, 0.0};
  Point3 irs{0.0, 8.0, 0.0};
  Point3 iu_center{3.0, 50.0, 0.0};
  double iu_radius = 2.0;
  Point3 eu_center{3.0, 8.0, 0.0};
  double eu_radius = 2.0;
};

/// Penalty/SCA parameters and iteration caps of the alternating solvers.
struct AlgorithmSettings {
  double eps1 = 1e-4;       // fractional-increase threshold, inner SCA loops
  double eps2 = 1e-4;       // fractional-increase threshold, BCD loop
  double varsigma1 = 1e-7;  // rank penalty threshold
  double varsigma2 = 1e-7;  // binary penalty threshold
  double mu0 = 1e-2;        // initial rank penalty weight
  double rho0 = 1e-2;       // initial binary penalty weight
  double c1 = 10.0;         // mu growth factor
  double c2 = 10.0;         // rho growth factor
  int max_sca_iterations = 40;
  int max_bcd_iterations = 25;
  int max_penalty_rounds = 12;
  int max_feasibility_iterations = 60;
  double conic_tolerance = 1e-8;
  int conic_max_iterations = 200;
};

struct SystemConfig {
  int num_antennas = 4;      // M
  int num_elements = 40;     // N
  int num_info_users = 5;    // K
  int num_energy_users = 8;  // J
  int max_groups = 3;        // L
  double power_w = 19.952623149688797;  // 43 dBm
  double duration_s = 1.0;              // T
  double energy_j = 1e-5;               // E
  double noise_w = 1e-11;               // -80 dBm
  double path_loss_ref_db = -30.0;      // C0 at 1 m
  double alpha_direct = 3.5;
  double alpha_irs = 2.2;
  double rician_factor_db = 3.0;
  Geometry geometry;
  AlgorithmSettings algorithm;
  bool robust = true;
  std::uint64_t rng_seed = 1;

  double power_time() const { return power_w * duration_s; }
};

double dbm_to_watts(double dbm);
double db_to_linear(double db);

/// Paper-scale defaults (M = 4, N = 40).
SystemConfig paper_profile();
/// CI-speed defaults (M = 2, N = 8, K = 4, J = 2, L = 2).
SystemConfig desk_profile();
SystemConfig profile_by_name(const std::string& name);

/// Hard errors (non-positive power, negative counts, ...). Empty when valid.
std::vector<std::string> validation_errors(const SystemConfig& cfg);
/// Soft findings such as an underloaded scenario.
std::vector<std::string> validation_warnings(const SystemConfig& cfg);
/// Throws InvalidInput listing every hard error.
void require_valid(const SystemConfig& cfg);

/// JSON round trip. Unknown keys are rejected with a message naming them.
/// Power may be given as "power_w" or "power_dbm", noise as "noise_w" or
/// "noise_dbm". Missing keys keep the values of `base`.
SystemConfig config_from_json(const std::string& text, const SystemConfig& base);
std::string config_to_json(const SystemConfig& cfg);

}  // namespace irsug
