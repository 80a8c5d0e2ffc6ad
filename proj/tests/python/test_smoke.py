# Copyright 2026 The bosoncert Authors
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

import json
import math

import numpy as np
import pytest

import bosoncert as bc


def test_fourier_is_unitary():
    u = bc.fourier(9)
    assert np.allclose(u.conj().T @ u, np.eye(9), atol=1e-12)
    assert np.allclose(np.abs(u) ** 2, 1 / 9)


def test_permanent_matches_bruteforce():
    rng = np.random.default_rng(0)
    a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    from itertools import permutations

    ref = sum(np.prod([a[i, s[i]] for i in range(4)]) for s in permutations(range(4)))
    assert abs(bc.permanent(a) - ref) < 1e-10 * abs(ref)


def test_hong_ou_mandel():
    bs = bc.fourier(2)
    assert bc.boson_probability(bs, [1, 2], [1, 2]) < 1e-15
    assert bc.boson_probability(bs, [1, 2], [1, 1]) == pytest.approx(0.5)
    assert bc.classical_probability(bs, [1, 2], [1, 2]) == pytest.approx(0.5)


def test_boson_batch_obeys_suppression_law():
    modes, m = bc.cyclic_input(3, 2)
    assert modes == [1, 4, 7] and m == 9
    batch = bc.sample("boson", bc.fourier(m), modes, 2000, 7)
    assert len(batch) == 2000
    report = bc.violation(batch, 3)
    assert report["forbidden"] == 0
    assert report["false_accept_prob"] == pytest.approx(3.0**-2000, rel=1e-9, abs=0)


def test_classical_violation_near_two_thirds():
    modes, m = bc.cyclic_input(3, 2)
    batch = bc.sample("classical", bc.fourier(m), modes, 50000, 3)
    v = bc.violation(batch, 3)["violation"]
    assert abs(v - 2 / 3) < 4 * math.sqrt(2 / 9 / 50000)


def test_estimates_and_runs():
    assert bc.required_runs(10, 1e-6) == 6
    assert bc.v_dev_estimate(3, 9, 0.1)["closed_form"] == pytest.approx(0.0330, rel=1e-3)
    assert bc.forbidden_event_count(3, 9) == 108
    assert bc.is_forbidden([1, 2], 2)


def test_errors_map_to_python_exceptions():
    with pytest.raises(ValueError):
        bc.cyclic_input(2, 1)
    with pytest.raises(MemoryError):
        bc.events(4, 16, cap=10)


def test_cli_roundtrip(tmp_path):
    out = tmp_path / "b.jsonl"
    code, stdout, _ = bc.cli(["sample", "--model", "boson", "--n", "2", "--p", "2", "--shots", "6",
                              "--seed", "1", "--out", str(out)])
    assert code == 0
    code, stdout, _ = bc.cli(["certify", str(out)])
    assert code == 0
    assert json.loads(stdout)["false_accept_prob"] == pytest.approx(2.0**-6)


def test_figure_rows_are_deterministic():
    a = bc.figure("fig4", seed=1, avg_dev=[0.01], dev_draws=10)
    b = bc.figure("fig4", seed=1, avg_dev=[0.01], dev_draws=10)
    assert a == b
    assert {r["quantity"] for r in a} == {"V_numeric", "V_estimate", "V_estimate_general"}
