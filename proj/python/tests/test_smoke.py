# Copyright 2026 The ndpseq Authors.
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

import pytest

import ndpseq


def test_scenarios_listed():
    names = ndpseq.scenario_names()
    assert "pennies" in names
    assert "games3" in names


def test_penny_inference_matches_oracle():
    report = ndpseq.infer("pennies", K=5000, queries=["new_agent_component 1", "component 5 1 below 0.5"])
    exact = ndpseq.oracle("pennies", queries=["new_agent_component 1"])
    estimate = report["queries"][0]
    assert abs(estimate["expectation"] - exact["queries"][0]["exact"]) < 4 * estimate["standard_error"] + 1e-9
    assert 0.4 < report["queries"][1]["probability_below"][0]["probability"] < 0.6


def test_inference_is_reproducible():
    a = ndpseq.infer("pennies", K=500, seed=3, threads=1, queries=["cocluster 1 2"])
    b = ndpseq.infer("pennies", K=500, seed=3, threads=2, queries=["cocluster 1 2"])
    assert a == b


def test_custom_data_and_config():
    config = {"kappa": 1.0, "eps": 2.0, "base": [0.5, 0.5]}
    report = ndpseq.infer(counts=[[2, 7], [5, 4]], config=config, K=1000, queries=["mean_score 1"])
    assert report["K"] == 1000
    assert 0.0 < report["queries"][0]["expectation"] < 1.0
    by_rows = ndpseq.infer(rows=[[1, 1, 0], [0]], config=config, K=100)
    assert by_rows["data"]["rows"] == 2


def test_errors_map_to_python_exceptions():
    with pytest.raises(KeyError):
        ndpseq.infer("no-such-scenario")
    with pytest.raises(ValueError):
        ndpseq.infer("pennies", K=10, queries=["component 9 1"])
    with pytest.raises(ValueError):
        ndpseq.gamer_pdf(0.0)


def test_special_helpers():
    assert math.isclose(math.exp(ndpseq.log_marginal_likelihood([0, 2], 2.0, [0.5, 0.5])), 1 / 3, rel_tol=1e-12)
    prime, _ = ndpseq.ess([1.0, 2.0, 3.0])
    assert math.isclose(prime, 36 / 14, rel_tol=1e-12)
    p = ndpseq.gamer_discretize(500)
    assert len(p) == 500 and math.isclose(sum(p), 1.0, rel_tol=1e-12)
    assert 45 < sum(i * v for i, v in enumerate(p)) < 55
    grid, values, h = ndpseq.kde([0.0, 1.0], [0.5, 0.5])
    assert math.isclose(h, 0.5 * 2 ** -0.2, rel_tol=1e-12)
    assert len(grid) == len(values) == 512
    assert all(x > 0 for x in ndpseq.gamer_sample(100, seed=2))
