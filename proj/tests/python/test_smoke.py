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

import math

import numpy as np
import pytest

import sea_oco

IID = """
[env]
preset = iid
mean = 0.3, 0
sigma = 0.5
[learner]
preset = oftrl
[run]
horizons = 50, 100, 200
num_seeds = 3
"""


def test_geometry():
    ball = sea_oco.FeasibleSet.ball(np.zeros(2), 1.0)
    np.testing.assert_allclose(sea_oco.project(np.array([3.0, 4.0]), ball), [0.6, 0.8])
    np.testing.assert_allclose(sea_oco.linear_minimize(np.array([0.0, 3.0]), ball), [0.0, -1.0])
    np.testing.assert_allclose(sea_oco.reg_argmin(np.array([4.0, 0.0]), 1.0, ball), [-1.0, 0.0])
    box = sea_oco.FeasibleSet.box(np.array([-1.0, -1.0]), np.array([1.0, 1.0]))
    assert box.diameter == pytest.approx(2 * math.sqrt(2))
    with pytest.raises(ValueError):
        sea_oco.reg_argmin(np.zeros(2), 0.0, ball)


def test_bounds_and_slope():
    assert sea_oco.theorem1_bound(1, 1, 0, 1, 0, 0, 100) == pytest.approx(7.1213, abs=1e-4)
    assert sea_oco.theorem3_bound(1, 1, 1, 0, 1, 0, math.e) == pytest.approx(19.33, abs=0.01)
    ts = [100.0, 400.0, 1600.0]
    assert sea_oco.fit_loglog_slope(ts, [10 * math.sqrt(t) for t in ts]) == pytest.approx(0.5)
    with pytest.raises(ValueError):
        sea_oco.fit_loglog_slope(ts, [1.0, -1.0, 2.0])


def test_run_trial_is_deterministic():
    a = sea_oco.run_trial(IID, 100, 7)
    b = sea_oco.run_trial(IID, 100, 7)
    assert a["x"].shape == (100, 2)
    np.testing.assert_array_equal(a["g"], b["g"])
    assert np.all(np.diff(a["eta"]) <= 0)
    assert np.all(np.linalg.norm(a["x"], axis=1) <= 1 + 1e-12)


def test_run_experiment_summary():
    summary = sea_oco.run_experiment(IID, {"run.threads": "1"})
    assert [h["T"] for h in summary["horizons"]] == [50, 100, 200]
    assert all(h["checks"]["thm1_dominance"] for h in summary["horizons"])
    assert summary["slope"] is not None
    assert summary["horizons"][0]["Sigma_bar"] == 0.0


def test_unknown_key():
    with pytest.raises(KeyError):
        sea_oco.run_experiment(IID, {"env.nonsense": "1"})


def test_acceptance_criterion():
    (result,) = sea_oco.run_acceptance([10])
    assert result["id"] == 10
    assert result["passed"], result["detail"]
