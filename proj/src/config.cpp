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

#include "irsug/config.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "irsug/numerics.hpp"
#include "json.hpp"

namespace irsug {

using nlohmann::json;

double distance(const Point3& a, const Point3& b) {
  const double dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

SystemConfig paper_profile() {
  SystemConfig cfg;
  cfg.num_antennas = 4;
  cfg.num_elements = 40;
  cfg.num_info_users = 5;
  cfg.num_energy_users = 8;
  cfg.max_groups = 3;
  cfg.power_w = dbm_to_watts(43.0);
  cfg.noise_w = dbm_to_watts(-80.0);
  cfg.energy_j = 1e-5;
  return cfg;
}

SystemConfig desk_profile() {
  SystemConfig cfg = paper_profile();
  cfg.num_antennas = 2;
  cfg.num_elements = 8;
  cfg.num_info_users = 4;
  cfg.num_energy_users = 2;
  cfg.max_groups = 2;
  cfg.energy_j = 5e-6;
  return cfg;
}

SystemConfig profile_by_name(const std::string& name) {
  if (name == "paper") return paper_profile();
  if (name == "desk") return desk_profile();
  throw InvalidInput("unknown profile '" + name + "' (expected paper or desk)");
}

std::vector<std::string> validation_errors(const SystemConfig& c) {
  std::vector<std::string> e;
  if (c.num_antennas < 1) e.push_back("num_antennas must be >= 1");
  if (c.num_elements < 0) e.push_back("num_elements must be >= 0");
  if (c.num_info_users < 0) e.push_back("num_info_users must be >= 0");
  if (c.num_energy_users < 0) e.push_back("num_energy_users must be >= 0");
  if (c.max_groups < 1) e.push_back("max_groups must be >= 1");
  if (!(c.power_w > 0.0)) e.push_back("power must be > 0");
  if (!(c.duration_s > 0.0)) e.push_back("duration_s must be > 0");
  if (!(c.energy_j >= 0.0)) e.push_back("energy_j must be >= 0");
  if (!(c.noise_w > 0.0)) e.push_back("noise power must be > 0");
  if (c.geometry.iu_radius < 0.0 || c.geometry.eu_radius < 0.0) e.push_back("region radii must be >= 0");
  const auto& a = c.algorithm;
  if (!(a.eps1 > 0.0) || !(a.eps2 > 0.0)) e.push_back("eps1/eps2 must be > 0");
  if (!(a.varsigma1 > 0.0) || !(a.varsigma2 > 0.0)) e.push_back("varsigma1/varsigma2 must be > 0");
  if (!(a.mu0 > 0.0) || !(a.rho0 > 0.0)) e.push_back("mu0/rho0 must be > 0");
  if (!(a.c1 > 1.0) || !(a.c2 > 1.0)) e.push_back("c1/c2 must be > 1");
  if (a.max_sca_iterations < 1 || a.max_bcd_iterations < 1 || a.max_penalty_rounds < 1 ||
      a.max_feasibility_iterations < 1 || a.conic_max_iterations < 1)
    e.push_back("iteration caps must be >= 1");
  if (!(a.conic_tolerance > 0.0)) e.push_back("conic_tolerance must be > 0");
  return e;
}

std::vector<std::string> validation_warnings(const SystemConfig& c) {
  std::vector<std::string> w;
  if (!(c.num_info_users + c.num_energy_users > c.num_antennas && c.num_info_users >= c.num_antennas))
    w.push_back("scenario is not overloaded (expected K + J > M and K >= M)");
  return w;
}

void require_valid(const SystemConfig& cfg) {
  const auto errors = validation_errors(cfg);
  if (errors.empty()) return;
  std::ostringstream os;
  os << "invalid configuration:";
  for (const auto& e : errors) os << "\n  - " << e;
  throw InvalidInput(os.str());
}

namespace {

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where,
                std::vector<std::string>& bad) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) bad.push_back(where + it.key());
}

Point3 point_from(const json& j) {
  if (!j.is_array() || j.size() != 3) throw InvalidInput("points must be arrays of three numbers");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

json point_to(const Point3& p) { return json::array({p.x, p.y, p.z}); }

template <typename T>
void read(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

SystemConfig config_from_json(const std::string& text, const SystemConfig& base) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw InvalidInput("config must be a JSON object");

  static const std::set<std::string> top = {
      "num_antennas", "num_elements", "num_info_users", "num_energy_users", "max_groups",
      "power_w", "power_dbm", "duration_s", "energy_j", "noise_w", "noise_dbm",
      "path_loss_ref_db", "alpha_direct", "alpha_irs", "rician_factor_db", "geometry",
      "algorithm", "robust", "rng_seed"};
  static const std::set<std::string> geo = {"ap", "irs", "iu_center", "iu_radius", "eu_center",
                                            "eu_radius"};
  static const std::set<std::string> alg = {
      "eps1", "eps2", "varsigma1", "varsigma2", "mu0", "rho0", "c1", "c2",
      "max_sca_iterations", "max_bcd_iterations", "max_penalty_rounds",
      "max_feasibility_iterations", "conic_tolerance", "conic_max_iterations"};

  std::vector<std::string> bad;
  check_keys(j, top, "", bad);
  if (j.contains("geometry")) check_keys(j["geometry"], geo, "geometry.", bad);
  if (j.contains("algorithm")) check_keys(j["algorithm"], alg, "algorithm.", bad);
  if (!bad.empty()) {
    std::ostringstream os;
    os << "unknown config keys:";
    for (const auto& b : bad) os << ' ' << b;
    throw InvalidInput(os.str());
  }

  SystemConfig c = base;
  try {
    read(j, "num_antennas", c.num_antennas);
    read(j, "num_elements", c.num_elements);
    read(j, "num_info_users", c.num_info_users);
    read(j, "num_energy_users", c.num_energy_users);
    read(j, "max_groups", c.max_groups);
    read(j, "power_w", c.power_w);
    if (j.contains("power_dbm")) c.power_w = dbm_to_watts(j["power_dbm"].get<double>());
    read(j, "duration_s", c.duration_s);
    read(j, "energy_j", c.energy_j);
    read(j, "noise_w", c.noise_w);
    if (j.contains("noise_dbm")) c.noise_w = dbm_to_watts(j["noise_dbm"].get<double>());
    read(j, "path_loss_ref_db", c.path_loss_ref_db);
    read(j, "alpha_direct", c.alpha_direct);
    read(j, "alpha_irs", c.alpha_irs);
    read(j, "rician_factor_db", c.rician_factor_db);
    read(j, "robust", c.robust);
    read(j, "rng_seed", c.rng_seed);
    if (j.contains("geometry")) {
      const auto& g = j["geometry"];
      if (g.contains("ap")) c.geometry.ap = point_from(g["ap"]);
      if (g.contains("irs")) c.geometry.irs = point_from(g["irs"]);
      if (g.contains("iu_center")) c.geometry.iu_center = point_from(g["iu_center"]);
      if (g.contains("eu_center")) c.geometry.eu_center = point_from(g["eu_center"]);
      read(g, "iu_radius", c.geometry.iu_radius);
      read(g, "eu_radius", c.geometry.eu_radius);
    }
    if (j.contains("algorithm")) {
      const auto& a = j["algorithm"];
      auto& s = c.algorithm;
      read(a, "eps1", s.eps1);
      read(a, "eps2", s.eps2);
      read(a, "varsigma1", s.varsigma1);
      read(a, "varsigma2", s.varsigma2);
      read(a, "mu0", s.mu0);
      read(a, "rho0", s.rho0);
      read(a, "c1", s.c1);
      read(a, "c2", s.c2);
      read(a, "max_sca_iterations", s.max_sca_iterations);
      read(a, "max_bcd_iterations", s.max_bcd_iterations);
      read(a, "max_penalty_rounds", s.max_penalty_rounds);
      read(a, "max_feasibility_iterations", s.max_feasibility_iterations);
      read(a, "conic_tolerance", s.conic_tolerance);
      read(a, "conic_max_iterations", s.conic_max_iterations);
    }
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("config value has the wrong type: ") + e.what());
  }
  return c;
}

std::string config_to_json(const SystemConfig& c) {
  json j;
  j["num_antennas"] = c.num_antennas;
  j["num_elements"] = c.num_elements;
  j["num_info_users"] = c.num_info_users;
  j["num_energy_users"] = c.num_energy_users;
  j["max_groups"] = c.max_groups;
  j["power_w"] = c.power_w;
  j["duration_s"] = c.duration_s;
  j["energy_j"] = c.energy_j;
  j["noise_w"] = c.noise_w;
  j["path_loss_ref_db"] = c.path_loss_ref_db;
  j["alpha_direct"] = c.alpha_direct;
  j["alpha_irs"] = c.alpha_irs;
  j["rician_factor_db"] = c.rician_factor_db;
  j["robust"] = c.robust;
  j["rng_seed"] = c.rng_seed;
  j["geometry"] = {{"ap", point_to(c.geometry.ap)},
                   {"irs", point_to(c.geometry.irs)},
                   {"iu_center", point_to(c.geometry.iu_center)},
                   {"iu_radius", c.geometry.iu_radius},
                   {"eu_center", point_to(c.geometry.eu_center)},
                   {"eu_radius", c.geometry.eu_radius}};
  const auto& a = c.algorithm;
  j["algorithm"] = {{"eps1", a.eps1},
                    {"eps2", a.eps2},
                    {"varsigma1", a.varsigma1},
                    {"varsigma2", a.varsigma2},
                    {"mu0", a.mu0},
                    {"rho0", a.rho0},
                    {"c1", a.c1},
                    {"c2", a.c2},
                    {"max_sca_iterations", a.max_sca_iterations},
                    {"max_bcd_iterations", a.max_bcd_iterations},
                    {"max_penalty_rounds", a.max_penalty_rounds},
                    {"max_feasibility_iterations", a.max_feasibility_iterations},
                    {"conic_tolerance", a.conic_tolerance},
                    {"conic_max_iterations", a.conic_max_iterations}};
  return j.dump(2);
}

}  // namespace irsug
