# SPDX-License-Identifier: Apache-2.0
# Copyright 2026 The lcomp Authors

import math
import os
from pathlib import Path

import pytest

import lcomp

DATA = Path(os.environ.get("LCOMP_TEST_DATA_DIR", Path(__file__).resolve().parents[2] / "tests" / "data"))


def test_candidate_likelihood_and_normalize():
    assert lcomp.compute_candidate_likelihood([math.log(0.9), math.log(0.1)]) == pytest.approx(0.3)
    d = lcomp.normalize([math.log(0.6), math.log(0.2), math.log(0.2)])
    assert d == pytest.approx([0.6, 0.2, 0.2])
    assert lcomp.argmax_option([0.45, 0.45, 0.1]) == 0
    with pytest.raises(lcomp.InvalidRecord):
        lcomp.normalize([-1.0])


def test_self_and_mutual_ops():
    assert lcomp.debias([0.6, 0.4], [0.7, 0.3], 1.0) == pytest.approx([0.5, 0.5])
    assert lcomp.highlight([0.6, 0.4], [0.3, 0.7], 0.0) == [0.6, 0.4]
    assert lcomp.dual_contrast([0.6, 0.4], [0.7, 0.3], [0.3, 0.7], 1.0, 0.0) == lcomp.debias(
        [0.6, 0.4], [0.7, 0.3], 1.0
    )
    with pytest.raises(lcomp.SpecError):
        lcomp.cross_model_contrast([0.6, 0.4], "a", [0.5, 0.5], "a", 1.0)
    assert lcomp.ensemble([[0.8, 0.2], [0.4, 0.6]]) == pytest.approx([0.6, 0.4])
    votes = lcomp.majority_vote([[0.8, 0.2], [0.4, 0.6], [0.3, 0.7]])
    assert votes == pytest.approx([1 / 3, 2 / 3])
    weighted = lcomp.majority_vote([[0.8, 0.2], [0.4, 0.6], [0.3, 0.7]], weighted=True)
    assert sum(weighted) == pytest.approx((0.8 + 0.6 + 0.7) / 3)


def test_specs():
    specs = lcomp.parse_specs({"schema_version": 1, "models": ["a", "b"], "mutual": "ensemble"})
    assert specs[0]["models"] == ["a", "b"]
    assert lcomp.describe_spec('{"schema_version":1,"models":["a"],"self_ops":[{"kind":"debias","alpha":0.5}]}') == (
        "debias(0.5)[a]"
    )
    with pytest.raises(lcomp.SpecError):
        lcomp.parse_specs({"schema_version": 1, "models": ["a"], "mutual": "median"})


def test_evaluate_bundled_fixture():
    index = lcomp.StoreIndex.load([DATA / "fixture20.jsonl"])
    assert index.record_count() == 120
    assert index.datasets() == ["toy"]
    report = lcomp.evaluate(index, "toy", {"schema_version": 1, "models": ["alpha"]})
    assert report["accuracy"] == 75.0
    assert report["n_evaluated"] == 20
    ens = lcomp.evaluate(
        index, "toy", {"schema_version": 1, "name": "ens", "models": ["alpha", "beta"], "mutual": "ensemble"}, jobs=4
    )
    assert ens["accuracy"] == 60.0
    csv = lcomp.compare([report, ens])
    assert csv.splitlines()[1].endswith(",75.00,60.00,-15.00")
    with pytest.raises(lcomp.SpecError):
        lcomp.evaluate(index, "toy", {"schema_version": 1, "models": ["ghost"]})


def test_record_errors_and_fixtures():
    line = '{"dataset":"d","sample":"s","model":"m","variant":"simple","n":2,"loglik":[-1,-2],"gold":0}\n'
    with pytest.raises(lcomp.DuplicateRecord):
        lcomp.StoreIndex.from_jsonl(line + line)
    with pytest.raises(lcomp.ParseError):
        lcomp.StoreIndex.from_jsonl(line[:30])
    assert "planted" in lcomp.fixture_names()
    index = lcomp.StoreIndex.from_jsonl(lcomp.fixture_jsonl("planted"))
    base = lcomp.evaluate(index, "planted", {"schema_version": 1, "models": ["m0"]})
    deb = lcomp.evaluate(
        index, "planted", {"schema_version": 1, "models": ["m0"], "self_ops": [{"kind": "debias", "alpha": 1.0}]}
    )
    assert deb["accuracy"] - base["accuracy"] >= 30.0
