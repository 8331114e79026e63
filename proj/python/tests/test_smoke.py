# Copyright 2026 The qtdpinn Authors
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

import qtdpinn as q


def test_analytical_solution_and_control():
    k = q.k_constant()
    assert q.analytical_v(1.0, 0.5) == pytest.approx(0.5**0.95 / 0.95, rel=1e-14)
    assert q.analytical_v(0.0, 0.5) == pytest.approx(
        math.exp(-k) * 0.5**0.95 / 0.95, rel=1e-14)
    d = q.analytical_bundle(0.3, 0.4)
    assert q.optimal_control(d["v_x"], d["v_xx"], 0.4) == pytest.approx(0.95, abs=1e-10)
    with pytest.raises(q.Error):
        q.analytical_v(0.5, 0.5, {"mu": 0.01})


def test_model_counts_and_values():
    assert [q.param_count(k) for k in
            ("qpinn", "quantum_inspired", "counterpart", "fully_connected")] == [7, 6, 6, 481]
    p = q.init_params("qpinn", seed=3)
    assert len(p) == 7 and p[6] == 0.0
    assert p == q.init_params("qpinn", seed=3)
    # The counterpart with p = (0, 1, 0, 1, 0, 0) is x, scaled by 10.
    assert q.model_value("counterpart", [0, 1, 0, 1, 0, 0], 0.3, 0.4) == pytest.approx(4.0)
    b = q.model_bundle("counterpart", [0, 1, 0, 1, 0, 0], 0.3, 0.4)
    assert b["v_x"] == pytest.approx(10.0) and b["v_xx"] == 0.0
    with pytest.raises(q.InvalidArgument):
        q.model_value("qpinn", [0.0] * 3, 0.5, 0.5)


def test_dequantization_identity():
    qi = q.init_params("quantum_inspired", seed=5, angle_range=math.pi)
    for t, x in [(0.1, 0.2), (0.5, 0.9), (0.8, 0.3)]:
        assert q.model_value("qpinn", qi + [0.0], t, x) == pytest.approx(
            q.model_value("quantum_inspired", qi, t, x), abs=1e-12)


def test_synthesized_circuit_matches_target():
    t1, t2 = q.synthesize_angles([0.0, 0.4], 1)
    circuit, params = q.univariate_model(t1, t2)
    assert circuit["width"] == 3
    assert q.expect_z0(circuit, params, [0.25]) == pytest.approx(0.1, abs=1e-8)
    mean, se = q.hadamard_test_shots(circuit, params, [0.25], 100000, seed=1)
    assert abs(mean - 0.1) < 5 * se


def test_resource_audit():
    r = q.audit_resources("prop1", L=3)
    assert r["passed"] and r["measured"]["depth"] == 14
    assert q.audit_resources("thm2", L=1, D=2, R=2)["measured"]["width"] == 6


def test_suites_and_training():
    assert q.suite_names() == ["circuits", "lowering", "derivatives", "hjb"]
    assert q.run_suite("hjb")["passed"]
    assert q.lr_at(0) == pytest.approx(1e-2) and q.lr_at(999) == pytest.approx(2e-4)
    cfg = {"train": {"epochs": 10, "init": {"angle_range": math.pi}}}
    log = q.train_run("quantum_inspired", seed=1, config=cfg)
    assert len(log["losses"]) == 10 and not log["aborted"]
    assert log["losses"][-1]["total"] < log["losses"][0]["total"]
    with pytest.raises(q.ConfigError):
        q.train_run("counterpart", config={"train": {"bogus": 1}})
