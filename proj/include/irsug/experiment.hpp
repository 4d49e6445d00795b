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

#include "irsug/baselines.hpp"

namespace irsug {

// A sweep: base system, optional axes (empty = base value), seeds and schemes.
struct ExperimentConfig {
  std::string profile = "desk";
  SystemConfig system;
  std::vector<int> sweep_info_users;    // K
  std::vector<int> sweep_energy_users;  // J
  std::vector<int> sweep_groups;        // L
  std::vector<int> sweep_elements;      // N
  std::vector<double> sweep_energy;     // E (J)
  int seeds = 1;
  std::uint64_t seed_base = 1;
  std::vector<Scheme> schemes{Scheme::NonOverlap, Scheme::Overlap, Scheme::RandomUG, Scheme::NoUG};
  int workers = 1;
  int mc_samples = 1000;
};

/// Parses an experiment document: SystemConfig keys at the top level plus
/// "profile", "sweep", "seeds", "seed_base", "schemes", "workers" and
/// "mc_samples". Every unknown key is listed in one InvalidInput.
ExperimentConfig experiment_from_json(const std::string& text, const std::string& default_profile = "desk");
std::string experiment_to_json(const ExperimentConfig& cfg);

/// Cartesian product of the sweep axes applied to the base system.
std::vector<SystemConfig> sweep_points(const ExperimentConfig& cfg);

struct ResultRow {
  int point = 0;
  int num_info_users = 0, num_energy_users = 0, max_groups = 0, num_elements = 0;
  double energy_j = 0.0;
  std::uint64_t seed = 0;     // channel seed
  std::uint64_t mc_seed = 0;  // Monte Carlo seed
  Scheme scheme = Scheme::NonOverlap;
  std::string status;         // ok, infeasible, failed, error
  bool feasible = false;
  bool heuristic_verdict = false;
  double eta = 0.0;               // expectation inside the log
  double eta_sampled_log = 0.0;   // mean of log over phase-error samples
  double eta_sampled_ratio = 0.0; // ratio of sampled means inside the log
  double eh_margin = 0.0;
  int active_slots = 0;
  double sum_a = 0.0;
  double max_groups_per_iu = 0.0;
  bool audit_ok = false;
  bool degenerate = false;
  bool projection_degraded = false;
  double final_h = 0.0, final_q = 0.0;
  int feasibility_iterations = 0;
  int bcd_iterations = 0;
  int conic_solves = 0;
  int draws = 0;
  double wall_time_s = 0.0;
  std::string message;
};

using ProgressFn = std::function<void(const ResultRow&)>;

/// Runs every (sweep point, seed) task on a pool of cfg.workers threads.
/// Rows come back in task order; a failing row never stops the sweep.
std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg, const ProgressFn& progress = {});

std::string csv_header();
std::string csv_line(const ResultRow& r);

/// Names of the CSV columns that depend on wall-clock time.
std::vector<std::string> timing_columns();

/// Writes results.csv and manifest.json into `dir` (created if missing).
/// Throws Error when the directory is not writable.
void write_results(const std::string& dir, const ExperimentConfig& cfg, const std::vector<ResultRow>& rows);

/// 64-bit FNV-1a of a string, used for the config hash.
std::uint64_t fnv1a(const std::string& s);

}  // namespace irsug
