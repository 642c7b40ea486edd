# Copyright 2026 The NoisyFair Authors.
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

import pytest

import noisyfair as nf


def test_uncons_sorts_by_value():
    inst = nf.Instance(w=[0.2, 0.9, 0.5], n=3, P=[[1, 0], [0, 1], [1, 0]])
    assert nf.rank(inst, algo="uncons") == [1, 2, 0]


def test_equal_representation_bounds():
    assert nf.u_equal_representation(3, 2) == [[1, 1], [1, 1], [2, 2]]
    assert nf.u_phi(2, 2, 2.0) == [[1, 1], [2, 2]]


def test_nresilient_is_valid_and_deterministic():
    inst = nf.synth_nonuniform_fdr(m=60, n=10, seed=3)
    first = nf.rank(inst, algo="nresilient", seed=11)
    assert first == nf.rank(inst, algo="nresilient", seed=11)
    assert len(first) == 10 and len(set(first)) == 10
    assert all(0 <= i < 60 for i in first)


def test_evaluate_single_group_prefix():
    inst = nf.Instance(w=[1.0] * 6, n=5, P=[[1, 0]] * 6, truth=[0, 0, 0, 0, 0, 1])
    report = nf.evaluate(inst, [0, 1, 2, 3, 4])
    assert report["rd"] == pytest.approx(0.0)
    assert report["checkpoints"] == [5]


def test_instance_json_round_trip():
    inst = nf.half_half_instance(4, 2)
    again = nf.Instance.from_json(inst.to_json())
    assert again.P == inst.P == [[0.5, 0.5]] * 4
    assert (again.m, again.n, again.p) == (4, 2, 2)


def test_half_half_probe_near_one_half():
    inst = nf.half_half_instance(10, 4)
    U = nf.u_equal_representation(4, 2)
    eps = [1e9, 0.5, 1e9, 1e9]
    probe = nf.probe_violations([0, 1, 2, 3], inst, U, eps, trials=4000, seed=5)
    assert probe["delta_hat"] == pytest.approx(0.5, abs=4 * probe["std_error"] + 1e-3)


def test_typed_errors_carry_code():
    inst = nf.Instance(w=[0.5, 0.5], n=2, P=[[1, 0], [1, 0]])
    with pytest.raises(nf.Error) as info:
        nf.rank(inst, algo="nresilient", phi=1.0)
    assert info.value.code == "Infeasible"
    with pytest.raises(nf.Error):
        nf.rank(inst, algo="nope")


def test_run_experiment_csv_schema():
    config = {
        "generator": "nonuniform-fdr",
        "m": 40,
        "n": 10,
        "tau": 0.0,
        "algorithms": ["uncons", "nresilient"],
        "phi": [2.0, 1.0],
        "iterations": 2,
        "seed": 4,
    }
    text = nf.run_experiment(json.dumps(config))
    rows = nf.read_results(text)
    assert len(rows) == 2 * 2 * 2
    assert text.splitlines()[0].split(",") == list(nf.COLUMNS)
    assert text == nf.run_experiment(json.dumps(config))
