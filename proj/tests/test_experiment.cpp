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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "irsug/experiment.hpp"
#include "json.hpp"

using namespace irsug;

namespace {

ExperimentConfig small_experiment() {
  ExperimentConfig e;
  e.system = desk_profile();
  e.system.num_info_users = 2;
  e.system.num_energy_users = 1;
  e.system.num_elements = 4;
  e.seeds = 1;
  e.schemes = {Scheme::NonOverlap, Scheme::NoUG};
  e.mc_samples = 200;
  return e;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  bool quoted = false;
  for (char c : line) {
    if (c == '"') quoted = !quoted;
    else if (c == ',' && !quoted) out.push_back(std::exchange(cell, {}));
    else cell += c;
  }
  out.push_back(cell);
  return out;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_SUITE("experiment") {
  TEST_CASE("json round trip and defaults") {
    const auto e = experiment_from_json(R"({"profile": "desk", "seeds": 3, "schemes": ["overlap", "noug"],
      "sweep": {"max_groups": [1, 2, 3], "energy_j": [1e-6, 2e-6]}, "num_elements": 6})");
    CHECK(e.seeds == 3);
    CHECK(e.system.num_elements == 6);
    CHECK(e.system.num_antennas == desk_profile().num_antennas);
    REQUIRE(e.schemes.size() == 2);
    CHECK(e.schemes[1] == Scheme::NoUG);
    const auto pts = sweep_points(e);
    CHECK(pts.size() == 6);
    CHECK(pts[0].max_groups == 1);
    CHECK(pts[5].max_groups == 3);
    CHECK(pts[5].energy_j == 2e-6);
    const auto again = experiment_from_json(experiment_to_json(e));
    CHECK(sweep_points(again).size() == 6);
    CHECK(again.system.num_elements == 6);
    CHECK(experiment_from_json("{}", "paper").system.num_elements == paper_profile().num_elements);
  }

  TEST_CASE("unknown keys are all reported") {
    try {
      experiment_from_json(R"({"num_antenas": 2, "sweep": {"K": [2]}})");
      FAIL("expected InvalidInput");
    } catch (const InvalidInput& ex) {
      const std::string msg = ex.what();
      CHECK(msg.find("num_antenas") != std::string::npos);
      CHECK(msg.find("K") != std::string::npos);
    }
    CHECK_THROWS_AS(experiment_from_json(R"({"schemes": ["best"]})"), InvalidInput);
    CHECK_THROWS_AS(experiment_from_json(R"({"seeds": 0})"), InvalidInput);
    CHECK_THROWS_AS(experiment_from_json("not json"), InvalidInput);
  }

  TEST_CASE("scheme names") {
    for (auto s : {Scheme::NonOverlap, Scheme::Overlap, Scheme::RandomUG, Scheme::NoUG})
      CHECK(scheme_from_string(to_string(s)) == s);
  }

  TEST_CASE("csv layout") {
    const auto cols = split(csv_header());
    CHECK(cols.front() == "point");
    CHECK(cols.back() == "message");
    ResultRow r;
    r.message = "a, \"b\"";
    CHECK(split(csv_line(r)).size() == cols.size());
    for (const auto& t : timing_columns()) CHECK(std::find(cols.begin(), cols.end(), t) != cols.end());
  }

  TEST_CASE("runs are deterministic apart from timing") {
    auto e = small_experiment();
    int seen = 0;
    const auto a = run_experiment(e, [&](const ResultRow&) { ++seen; });
    e.workers = 2;
    const auto b = run_experiment(e);
    REQUIRE(a.size() == 2);
    CHECK(seen == 2);
    REQUIRE(b.size() == a.size());
    const auto cols = split(csv_header());
    const auto skip = timing_columns();
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].status == "ok");
      CHECK(a[i].audit_ok);
      const auto x = split(csv_line(a[i])), y = split(csv_line(b[i]));
      for (std::size_t c = 0; c < cols.size(); ++c) {
        if (std::find(skip.begin(), skip.end(), cols[c]) != skip.end()) continue;
        CHECK_MESSAGE(x[c] == y[c], cols[c]);
      }
    }
    CHECK(a[0].eta >= a[1].eta - 1e-9 * a[0].eta);  // grouping never loses to a single group here
  }

  TEST_CASE("infeasible points are reported, not thrown") {
    auto e = small_experiment();
    e.system.energy_j = 1.0;
    const auto rows = run_experiment(e);
    REQUIRE(rows.size() == 2);
    for (const auto& r : rows) {
      CHECK(r.status == "infeasible");
      CHECK_FALSE(r.feasible);
      CHECK(r.eta == 0.0);
    }
  }

  TEST_CASE("results and manifest on disk") {
    auto e = small_experiment();
    e.schemes = {Scheme::NoUG};
    const auto rows = run_experiment(e);
    const auto dir = std::filesystem::temp_directory_path() / "irsug_test_results";
    std::filesystem::remove_all(dir);
    write_results(dir.string(), e, rows);
    const auto csv = slurp(dir / "results.csv");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
    const auto man = nlohmann::json::parse(slurp(dir / "manifest.json"));
    CHECK(man.contains("config_hash"));
    CHECK(man["rows"].get<int>() == 1);
    std::filesystem::remove_all(dir);

    const auto blocker = std::filesystem::temp_directory_path() / "irsug_test_blocker";
    { std::ofstream(blocker) << "x"; }
    CHECK_THROWS_AS(write_results((blocker / "sub").string(), e, rows), Error);
    std::filesystem::remove(blocker);
  }

  TEST_CASE("fnv1a reference values") {
    CHECK(fnv1a("") == 0xcbf29ce484222325ULL);
    CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cULL);
  }
}
