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

#include "irsug/experiment.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace irsug {

using nlohmann::json;

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

namespace {

const std::set<std::string> kExperimentKeys = {"profile", "sweep", "seeds", "seed_base", "schemes", "workers",
                                               "mc_samples"};
const std::set<std::string> kSweepKeys = {"num_info_users", "num_energy_users", "max_groups", "num_elements",
                                          "energy_j"};

template <class T>
std::vector<T> read_axis(const json& s, const char* key) {
  if (!s.contains(key)) return {};
  const json& a = s.at(key);
  if (!a.is_array()) return {a.get<T>()};
  return a.get<std::vector<T>>();
}

std::string hex(std::uint64_t x) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
  return buf;
}

}  // namespace

ExperimentConfig experiment_from_json(const std::string& text, const std::string& default_profile) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw InvalidInput("config must be a JSON object");

  ExperimentConfig c;
  json sys = json::object();
  std::vector<std::string> bad;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!kExperimentKeys.count(it.key())) sys[it.key()] = it.value();
  }
  if (j.contains("sweep")) {
    if (!j["sweep"].is_object())
      bad.push_back("sweep (must be an object)");
    else
      for (auto it = j["sweep"].begin(); it != j["sweep"].end(); ++it)
        if (!kSweepKeys.count(it.key())) bad.push_back("sweep." + it.key());
  }

  try {
    c.profile = j.value("profile", default_profile);
    c.system = profile_by_name(c.profile);
    try {
      c.system = config_from_json(sys.dump(), c.system);
    } catch (const InvalidInput& e) {
      if (bad.empty()) throw;
      throw InvalidInput(std::string(e.what()) + "; unknown sweep keys: " + [&] {
        std::string s;
        for (const auto& b : bad) s += (s.empty() ? "" : " ") + b;
        return s;
      }());
    }
    if (!bad.empty()) {
      std::string s = "unknown config keys:";
      for (const auto& b : bad) s += " " + b;
      throw InvalidInput(s);
    }
    if (j.contains("sweep")) {
      const json& s = j["sweep"];
      c.sweep_info_users = read_axis<int>(s, "num_info_users");
      c.sweep_energy_users = read_axis<int>(s, "num_energy_users");
      c.sweep_groups = read_axis<int>(s, "max_groups");
      c.sweep_elements = read_axis<int>(s, "num_elements");
      c.sweep_energy = read_axis<double>(s, "energy_j");
    }
    c.seeds = j.value("seeds", c.seeds);
    c.seed_base = j.value("seed_base", c.seed_base);
    c.workers = j.value("workers", c.workers);
    c.mc_samples = j.value("mc_samples", c.mc_samples);
    if (j.contains("schemes")) {
      c.schemes.clear();
      for (const auto& s : j["schemes"]) c.schemes.push_back(scheme_from_string(s.get<std::string>()));
    }
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("config value has the wrong type: ") + e.what());
  }

  std::vector<std::string> errs;
  if (c.seeds < 1) errs.push_back("seeds must be >= 1");
  if (c.workers < 1) errs.push_back("workers must be >= 1");
  if (c.mc_samples < 0) errs.push_back("mc_samples must be >= 0");
  if (c.schemes.empty()) errs.push_back("schemes must not be empty");
  for (const auto& p : sweep_points(c))
    for (const auto& e : validation_errors(p)) errs.push_back(e);
  if (!errs.empty()) {
    std::string s = "invalid config:";
    for (const auto& e : errs) s += " " + e + ";";
    throw InvalidInput(s);
  }
  return c;
}

std::string experiment_to_json(const ExperimentConfig& c) {
  json j = json::parse(config_to_json(c.system));
  j["profile"] = c.profile;
  json s = json::object();
  if (!c.sweep_info_users.empty()) s["num_info_users"] = c.sweep_info_users;
  if (!c.sweep_energy_users.empty()) s["num_energy_users"] = c.sweep_energy_users;
  if (!c.sweep_groups.empty()) s["max_groups"] = c.sweep_groups;
  if (!c.sweep_elements.empty()) s["num_elements"] = c.sweep_elements;
  if (!c.sweep_energy.empty()) s["energy_j"] = c.sweep_energy;
  j["sweep"] = s;
  j["seeds"] = c.seeds;
  j["seed_base"] = c.seed_base;
  j["workers"] = c.workers;
  j["mc_samples"] = c.mc_samples;
  json sc = json::array();
  for (Scheme x : c.schemes) sc.push_back(to_string(x));
  j["schemes"] = sc;
  return j.dump(2);
}

std::vector<SystemConfig> sweep_points(const ExperimentConfig& c) {
  auto or_base = [](const auto& axis, auto base) {
    using T = decltype(base);
    return axis.empty() ? std::vector<T>{base} : std::vector<T>(axis.begin(), axis.end());
  };
  std::vector<SystemConfig> out;
  for (int K : or_base(c.sweep_info_users, c.system.num_info_users))
    for (int J : or_base(c.sweep_energy_users, c.system.num_energy_users))
      for (int L : or_base(c.sweep_groups, c.system.max_groups))
        for (int N : or_base(c.sweep_elements, c.system.num_elements))
          for (double E : or_base(c.sweep_energy, c.system.energy_j)) {
            SystemConfig p = c.system;
            p.num_info_users = K;
            p.num_energy_users = J;
            p.max_groups = L;
            p.num_elements = N;
            p.energy_j = E;
            out.push_back(p);
          }
  return out;
}

namespace {

struct Task {
  int point;
  SystemConfig cfg;
  std::uint64_t seed;
};

ResultRow base_row(const Task& t, Scheme s) {
  ResultRow r;
  r.point = t.point;
  r.num_info_users = t.cfg.num_info_users;
  r.num_energy_users = t.cfg.num_energy_users;
  r.max_groups = t.cfg.max_groups;
  r.num_elements = t.cfg.num_elements;
  r.energy_j = t.cfg.energy_j;
  r.seed = t.seed;
  r.scheme = s;
  r.mc_seed = fnv1a(std::to_string(t.seed) + "/" + to_string(s) + "/" + std::to_string(t.point));
  return r;
}

std::vector<ResultRow> run_task(const Task& t, const ExperimentConfig& c) {
  std::vector<ResultRow> rows;
  const SystemConfig& cfg = t.cfg;
  std::optional<ChannelSet> ch;
  std::optional<PhaseStats> stats;
  std::optional<FeasibilityReport> feas;
  std::string setup_error;
  double feas_time = 0.0;
  try {
    ch = generate_channels(cfg, t.seed);
    stats = phase_error_moment_matrix(cfg.num_elements, cfg.robust);
    const auto t0 = std::chrono::steady_clock::now();
    feas = check_feasibility(*ch, *stats, cfg);
    feas_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  } catch (const std::exception& e) {
    setup_error = e.what();
  }

  for (Scheme s : c.schemes) {
    ResultRow r = base_row(t, s);
    if (!setup_error.empty()) {
      r.status = "error";
      r.message = setup_error;
      rows.push_back(r);
      continue;
    }
    const auto t0 = std::chrono::steady_clock::now();
    try {
      const SchemeResult res = run_scheme(s, *ch, *stats, cfg, r.mc_seed, feas);
      const SolveReport& rep = res.report;
      r.feasible = res.feasible;
      r.heuristic_verdict = s == Scheme::NoUG ? false : feas->heuristic;
      r.feasibility_iterations = s == Scheme::NoUG ? 0 : feas->iterations;
      r.draws = res.draws;
      r.degenerate = rep.degenerate;
      r.projection_degraded = rep.projection_degraded;
      r.final_h = rep.final_h;
      r.final_q = rep.final_q;
      r.bcd_iterations = static_cast<int>(rep.trace.bcd.size());
      r.conic_solves = rep.trace.conic_solves;
      r.message = rep.message;
      r.eta = res.eta();
      if (res.feasible) {
        SystemConfig used = cfg;
        if (s == Scheme::NoUG) used.max_groups = 1;
        const MetricsReport m = expected_metrics(rep.design, *ch, *stats, used);
        const DesignAudit au = audit_design(rep.design, *ch, *stats, used, s != Scheme::Overlap);
        r.eh_margin = m.eh_margin;
        r.active_slots = m.active_slots;
        r.sum_a = m.sum_a;
        r.max_groups_per_iu = au.max_groups_per_iu;
        r.audit_ok = au.ok;
        if (c.mc_samples > 0) {
          const SampledMetrics sm = sampled_metrics(rep.design, *ch, used, c.mc_samples, r.mc_seed);
          r.eta_sampled_log = sm.eta_mean_log;
          r.eta_sampled_ratio = sm.eta_ratio;
        }
        r.status = au.ok ? "ok" : "failed";
        if (!au.ok && r.message.empty()) r.message = au.failures.front();
      } else {
        r.status = "infeasible";
      }
    } catch (const std::exception& e) {
      r.status = "error";
      r.message = e.what();
    }
    r.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (s != Scheme::NoUG) r.wall_time_s += feas_time;
    rows.push_back(r);
  }
  return rows;
}

}  // namespace

std::vector<ResultRow> run_experiment(const ExperimentConfig& c, const ProgressFn& progress) {
  std::vector<Task> tasks;
  const auto points = sweep_points(c);
  for (int p = 0; p < static_cast<int>(points.size()); ++p)
    for (int s = 0; s < c.seeds; ++s) tasks.push_back({p, points[p], c.seed_base + static_cast<std::uint64_t>(s)});

  std::vector<std::vector<ResultRow>> done(tasks.size());
  std::vector<char> ready(tasks.size(), 0);
  std::atomic<std::size_t> next{0};
  std::mutex sink;
  std::size_t flushed = 0;

  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      std::vector<ResultRow> rows = run_task(tasks[i], c);
      std::lock_guard<std::mutex> lock(sink);
      done[i] = std::move(rows);
      ready[i] = 1;
      // Report in task order.
      while (flushed < tasks.size() && ready[flushed]) {
        if (progress)
          for (const auto& r : done[flushed]) progress(r);
        ++flushed;
      }
    }
  };
  const int n = std::max(1, std::min<int>(c.workers, static_cast<int>(tasks.size())));
  std::vector<std::thread> pool;
  for (int w = 1; w < n; ++w) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  std::vector<ResultRow> out;
  for (auto& rows : done)
    for (auto& r : rows) out.push_back(std::move(r));
  return out;
}

std::string csv_header() {
  return "point,num_info_users,num_energy_users,max_groups,num_elements,energy_j,seed,mc_seed,scheme,status,"
         "feasible,heuristic_verdict,eta,eta_sampled_log,eta_sampled_ratio,eh_margin,active_slots,sum_a,"
         "max_groups_per_iu,audit_ok,degenerate,projection_degraded,final_h,final_q,feasibility_iterations,"
         "bcd_iterations,conic_solves,draws,wall_time_s,message";
}

std::vector<std::string> timing_columns() { return {"wall_time_s"}; }

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += (ch == '\n' || ch == '\r') ? ' ' : ch;
  }
  return out + "\"";
}

}  // namespace

std::string csv_line(const ResultRow& r) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::setprecision(17);
  os << r.point << ',' << r.num_info_users << ',' << r.num_energy_users << ',' << r.max_groups << ','
     << r.num_elements << ',' << r.energy_j << ',' << r.seed << ',' << r.mc_seed << ',' << to_string(r.scheme) << ','
     << r.status << ',' << int(r.feasible) << ',' << int(r.heuristic_verdict) << ',' << r.eta << ','
     << r.eta_sampled_log << ',' << r.eta_sampled_ratio << ',' << r.eh_margin << ',' << r.active_slots << ','
     << r.sum_a << ',' << r.max_groups_per_iu << ',' << int(r.audit_ok) << ',' << int(r.degenerate) << ','
     << int(r.projection_degraded) << ',' << r.final_h << ',' << r.final_q << ',' << r.feasibility_iterations
     << ',' << r.bcd_iterations << ',' << r.conic_solves << ',' << r.draws << ',' << std::setprecision(6)
     << r.wall_time_s << ',' << quoted(r.message);
  return os.str();
}

void write_results(const std::string& dir, const ExperimentConfig& c, const std::vector<ResultRow>& rows) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory '" + dir + "': " + ec.message());

  const fs::path csv_path = fs::path(dir) / "results.csv";
  std::ofstream csv(csv_path);
  if (!csv) throw Error("cannot write '" + csv_path.string() + "'");
  csv << csv_header() << '\n';
  for (const auto& r : rows) csv << csv_line(r) << '\n';
  if (!csv) throw Error("write failed for '" + csv_path.string() + "'");

  const std::string echo = experiment_to_json(c);
  json m;
  m["config"] = json::parse(echo);
  m["config_hash"] = hex(fnv1a(json::parse(echo).dump()));
  m["version"] = IRSUG_VERSION;
  m["csv"] = "results.csv";
  m["rows"] = rows.size();
  m["random_grouping"] = {{"draw", "each IU picks one of L slots or none uniformly"},
                          {"max_draws", kMaxRandomDraws},
                          {"on_exhaustion", "eta = 0"}};
  m["infeasible_convention"] = "eta = 0";
  json seeds = json::array();
  for (const auto& r : rows)
    seeds.push_back({{"point", r.point}, {"scheme", to_string(r.scheme)}, {"seed", r.seed}, {"mc_seed", r.mc_seed}});
  m["row_seeds"] = seeds;
  const fs::path man_path = fs::path(dir) / "manifest.json";
  std::ofstream man(man_path);
  if (!man) throw Error("cannot write '" + man_path.string() + "'");
  man << m.dump(2) << '\n';
  if (!man) throw Error("write failed for '" + man_path.string() + "'");
}

}  // namespace irsug
