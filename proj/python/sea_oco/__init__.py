# Copyright 2026 The sea-oco Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Python bindings for the sea-oco C++ core."""

import json

from ._core import (
    ConfigError,
    ContractError,
    DomainError,
    FeasibleSet,
    ProtocolError,
    TrialError,
    UnknownKeyError,
    fit_loglog_slope,
    linear_minimize,
    project,
    reg_argmin,
    run_acceptance,
    run_trial,
    theorem1_bound,
    theorem3_bound,
    worst_case_bound,
)
from ._core import run_experiment_json as _run_experiment_json


def run_experiment(config, overrides=None):
    """Runs every (T, seed) pair of an INI config and returns the summary dict."""
    return json.loads(_run_experiment_json(config, dict(overrides or {})))


__all__ = [
    "ConfigError",
    "ContractError",
    "DomainError",
    "FeasibleSet",
    "ProtocolError",
    "TrialError",
    "UnknownKeyError",
    "fit_loglog_slope",
    "linear_minimize",
    "project",
    "reg_argmin",
    "run_acceptance",
    "run_experiment",
    "run_trial",
    "theorem1_bound",
    "theorem3_bound",
    "worst_case_bound",
]
