# SPDX-License-Identifier: Apache-2.0
#
# irsug: joint user grouping and resource allocation for IRS-aided SWIPT
# Copyright (C) 2026 The irsug Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
# ------------------------------------------------------------------------

import json
import math

import numpy as np
import pytest

import irsug


def small_config():
    cfg = irsug.desk_profile()
    cfg.num_info_users = 2
    cfg.num_energy_users = 1
    cfg.num_elements = 4
    return cfg


def test_version_and_profiles():
    assert irsug.__version__
    desk, paper = irsug.desk_profile(), irsug.paper_profile()
    assert desk.num_antennas == 2
    assert paper.num_elements == 40
    assert desk.validate() == []


def test_config_json_round_trip():
    cfg = small_config()
    again = irsug.SystemConfig.from_json(cfg.to_json())
    assert again.num_info_users == 2
    with pytest.raises(ValueError):
        irsug.SystemConfig.from_json(json.dumps({"num_antenas": 2}))


def test_moment_matrix_closed_form():
    z = irsug.phase_moment_matrix(2)
    assert z.shape == (3, 3)
    assert z[0, 1] == pytest.approx(4 / math.pi**2)
    assert z[0, 2] == pytest.approx(2 / math.pi)
    assert np.allclose(irsug.phase_moment_matrix(2, robust=False), 1.0)


def test_quad_lift_matches_trace():
    rng = np.random.default_rng(0)
    H = rng.normal(size=(5, 2)) + 1j * rng.normal(size=(5, 2))
    v = np.append(np.exp(1j * rng.uniform(0, 2 * np.pi, 4)), 1.0)
    b = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    W = b @ b.conj().T
    X = irsug.effective_matrix(H, v)
    Q = irsug.quad_lift(H, W)
    assert np.vdot(v, Q @ v).real == pytest.approx(np.trace(X @ W).real, rel=1e-10)


def test_channels_are_deterministic():
    cfg = small_config()
    H1, G1 = irsug.generate_channels(cfg, 3)
    H2, _ = irsug.generate_channels(cfg, 3)
    assert len(H1) == 2 and len(G1) == 1
    assert H1[0].shape == (5, 2)
    assert np.array_equal(H1[0], H2[0])


def test_solve_and_audit():
    cfg = small_config()
    assert irsug.check_feasibility(cfg, 1)["feasible"]
    r = irsug.solve("nonoverlap", cfg, 1)
    assert r["feasible"]
    assert r["eta"] > 0
    d = r["design"]
    assert d["a"].shape == (2, 2)
    assert np.all(d["a"].sum(axis=1) <= 1)
    m = irsug.expected_metrics(d, cfg, 1)
    assert m["eta"] == pytest.approx(r["eta"], rel=1e-12)
    assert irsug.audit_design(d, cfg, 1)["ok"]
    with pytest.raises(ValueError):
        irsug.solve("best", cfg, 1)


def test_sampled_moment_within_error():
    mean, se_re, _ = irsug.sampled_phase_moment(1, 20000, 5)
    assert abs(mean[0, 1].real - 2 / math.pi) <= 4 * se_re[0, 1]


def test_experiment_rows():
    doc = {"profile": "desk", "num_info_users": 2, "num_energy_users": 1, "num_elements": 4,
           "seeds": 1, "schemes": ["noug"], "mc_samples": 100}
    rows = irsug.run_experiment(json.dumps(doc))
    assert len(rows) == 1
    assert rows[0]["status"] == "ok"
    assert rows[0]["audit_ok"]
