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

"""IRS-aided SWIPT user grouping under IRS phase errors."""

from ._irsug import (
    Error,
    InvalidInput,
    SystemConfig,
    __version__,
    audit_design,
    check_feasibility,
    desk_profile,
    effective_matrix,
    expected_metrics,
    generate_channels,
    paper_profile,
    phase_moment_matrix,
    quad_lift,
    run_experiment,
    sampled_phase_moment,
    solve,
)

__all__ = [
    "Error",
    "InvalidInput",
    "SystemConfig",
    "__version__",
    "audit_design",
    "check_feasibility",
    "desk_profile",
    "effective_matrix",
    "expected_metrics",
    "generate_channels",
    "paper_profile",
    "phase_moment_matrix",
    "quad_lift",
    "run_experiment",
    "sampled_phase_moment",
    "solve",
]
