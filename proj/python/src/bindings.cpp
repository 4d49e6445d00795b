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

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "irsug/baselines.hpp"
#include "irsug/eval.hpp"
#include "irsug/experiment.hpp"
#include "irsug/opt_overlap.hpp"

namespace py = pybind11;
using namespace irsug;

namespace {

py::dict design_dict(const Design& d) {
  py::list w, W_E, v;
  for (const auto& row : d.w) {
    py::list r;
    for (const auto& x : row) r.append(x);
    w.append(r);
  }
  for (const auto& x : d.W_E) W_E.append(x);
  for (const auto& x : d.v) v.append(x);
  py::dict out;
  out["a"] = d.a;
  out["tau"] = d.tau;
  out["w"] = w;
  out["W_E"] = W_E;
  out["v"] = v;
  out["eta"] = d.eta;
  return out;
}

Design design_from_dict(const py::dict& p) {
  Design d;
  d.a = p["a"].cast<RMatrix>();
  d.tau = p["tau"].cast<RVector>();
  for (auto row : p["w"]) {
    std::vector<CVector> r;
    for (auto x : row) r.push_back(x.cast<CVector>());
    d.w.push_back(std::move(r));
  }
  for (auto x : p["W_E"]) d.W_E.push_back(x.cast<CMatrix>());
  for (auto x : p["v"]) d.v.push_back(x.cast<CVector>());
  if (p.contains("eta")) d.eta = p["eta"].cast<double>();
  return d;
}

py::dict metrics_dict(const MetricsReport& m) {
  py::dict out;
  out["throughput"] = m.throughput;
  out["eta"] = m.eta;
  out["energy"] = m.energy;
  out["eh_margin"] = m.eh_margin;
  out["slot_power"] = m.slot_power;
  out["active_slots"] = m.active_slots;
  out["sum_a"] = m.sum_a;
  out["sinr"] = m.sinr;
  return out;
}

py::dict scheme_dict(const SchemeResult& r) {
  py::dict out;
  out["scheme"] = to_string(r.scheme);
  out["feasible"] = r.feasible;
  out["eta"] = r.eta();
  out["design"] = design_dict(r.report.design);
  out["final_h"] = r.report.final_h;
  out["final_q"] = r.report.final_q;
  out["degenerate"] = r.report.degenerate;
  out["conic_solves"] = r.report.trace.conic_solves;
  out["draws"] = r.draws;
  return out;
}

py::dict row_dict(const ResultRow& r) {
  py::dict out;
  out["point"] = r.point;
  out["num_info_users"] = r.num_info_users;
  out["num_energy_users"] = r.num_energy_users;
  out["max_groups"] = r.max_groups;
  out["num_elements"] = r.num_elements;
  out["energy_j"] = r.energy_j;
  out["seed"] = r.seed;
  out["scheme"] = to_string(r.scheme);
  out["status"] = r.status;
  out["feasible"] = r.feasible;
  out["eta"] = r.eta;
  out["eta_sampled_log"] = r.eta_sampled_log;
  out["eta_sampled_ratio"] = r.eta_sampled_ratio;
  out["eh_margin"] = r.eh_margin;
  out["audit_ok"] = r.audit_ok;
  out["wall_time_s"] = r.wall_time_s;
  out["message"] = r.message;
  return out;
}

}  // namespace

PYBIND11_MODULE(_irsug, m) {
  m.doc() = "IRS-aided SWIPT user grouping under phase errors";
  m.attr("__version__") = IRSUG_VERSION;

  // Translators are tried newest first, so the base class goes in first.
  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);

  py::class_<SystemConfig>(m, "SystemConfig")
      .def(py::init<>())
      .def_readwrite("num_antennas", &SystemConfig::num_antennas)
      .def_readwrite("num_elements", &SystemConfig::num_elements)
      .def_readwrite("num_info_users", &SystemConfig::num_info_users)
      .def_readwrite("num_energy_users", &SystemConfig::num_energy_users)
      .def_readwrite("max_groups", &SystemConfig::max_groups)
      .def_readwrite("power_w", &SystemConfig::power_w)
      .def_readwrite("duration_s", &SystemConfig::duration_s)
      .def_readwrite("energy_j", &SystemConfig::energy_j)
      .def_readwrite("noise_w", &SystemConfig::noise_w)
      .def_readwrite("robust", &SystemConfig::robust)
      .def("to_json", [](const SystemConfig& c) { return config_to_json(c); })
      .def_static("from_json", [](const std::string& text) { return config_from_json(text, desk_profile()); })
      .def("validate", [](const SystemConfig& c) { return validation_errors(c); });

  m.def("desk_profile", &desk_profile);
  m.def("paper_profile", &paper_profile);

  m.def(
      "generate_channels",
      [](const SystemConfig& cfg, std::uint64_t seed) {
        const auto ch = generate_channels(cfg, seed);
        return py::make_tuple(ch.H, ch.G);
      },
      py::arg("cfg"), py::arg("seed"), "Returns (H, G): lists of (N+1) x M channel matrices.");

  m.def(
      "phase_moment_matrix", [](int n, bool robust) { return phase_error_moment_matrix(n, robust).Z; },
      py::arg("num_elements"), py::arg("robust") = true);

  m.def(
      "effective_matrix",
      [](const CMatrix& channel, const CVector& v, bool robust) {
        return effective_matrix(channel, v, phase_error_moment_matrix(static_cast<int>(v.size()) - 1, robust));
      },
      py::arg("channel"), py::arg("v"), py::arg("robust") = true);

  m.def(
      "quad_lift",
      [](const CMatrix& channel, const CMatrix& covariance, bool robust) {
        return quad_lift(channel, covariance, phase_error_moment_matrix(static_cast<int>(channel.rows()) - 1, robust));
      },
      py::arg("channel"), py::arg("covariance"), py::arg("robust") = true);

  m.def(
      "check_feasibility",
      [](const SystemConfig& cfg, std::uint64_t seed) {
        const auto ch = generate_channels(cfg, seed);
        const auto r = check_feasibility(ch, phase_error_moment_matrix(cfg.num_elements, cfg.robust), cfg);
        py::dict out;
        out["feasible"] = r.feasible();
        out["heuristic"] = r.heuristic;
        out["delta"] = r.design.delta;
        out["trace"] = r.trace;
        return out;
      },
      py::arg("cfg"), py::arg("seed"));

  m.def(
      "solve",
      [](const std::string& scheme, const SystemConfig& cfg, std::uint64_t seed, std::uint64_t scheme_seed) {
        const auto ch = generate_channels(cfg, seed);
        const auto st = phase_error_moment_matrix(cfg.num_elements, cfg.robust);
        SchemeResult r;
        {
          py::gil_scoped_release release;
          r = run_scheme(scheme_from_string(scheme), ch, st, cfg, scheme_seed);
        }
        return scheme_dict(r);
      },
      py::arg("scheme"), py::arg("cfg"), py::arg("seed"), py::arg("scheme_seed") = 1,
      "Runs one scheme (nonoverlap, overlap, random, noug) on the channel draw of `seed`.");

  m.def(
      "expected_metrics",
      [](const py::dict& design, const SystemConfig& cfg, std::uint64_t seed) {
        const auto ch = generate_channels(cfg, seed);
        return metrics_dict(
            expected_metrics(design_from_dict(design), ch, phase_error_moment_matrix(cfg.num_elements, true), cfg));
      },
      py::arg("design"), py::arg("cfg"), py::arg("seed"));

  m.def(
      "audit_design",
      [](const py::dict& design, const SystemConfig& cfg, std::uint64_t seed, bool non_overlapping) {
        const auto ch = generate_channels(cfg, seed);
        const auto a = audit_design(design_from_dict(design), ch, phase_error_moment_matrix(cfg.num_elements, true),
                                    cfg, non_overlapping);
        py::dict out;
        out["ok"] = a.ok;
        out["eh_margin"] = a.eh_margin;
        out["power_excess"] = a.power_excess;
        out["modulus_error"] = a.modulus_error;
        out["failures"] = a.failures;
        return out;
      },
      py::arg("design"), py::arg("cfg"), py::arg("seed"), py::arg("non_overlapping") = true);

  m.def(
      "sampled_phase_moment",
      [](int n, int samples, std::uint64_t seed) {
        const auto e = sampled_phase_moment(n, samples, seed);
        return py::make_tuple(e.mean, e.se_real, e.se_imag);
      },
      py::arg("num_elements"), py::arg("samples"), py::arg("seed"));

  m.def(
      "run_experiment",
      [](const std::string& config_json, const std::string& profile) {
        const auto cfg = experiment_from_json(config_json, profile);
        std::vector<ResultRow> rows;
        {
          py::gil_scoped_release release;
          rows = run_experiment(cfg);
        }
        py::list out;
        for (const auto& r : rows) out.append(row_dict(r));
        return out;
      },
      py::arg("config_json"), py::arg("profile") = "desk");
}
