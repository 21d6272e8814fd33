# SPDX-License-Identifier: Apache-2.0
# Copyright 2026 The lcomp Authors
"""Python bindings for the lcomp likelihood composition engine.

Distributions are plain lists of floats. Specs are JSON documents in the same
format the ``lcomp`` command line accepts; reports come back as dicts.
"""

from __future__ import annotations

import json
from typing import Any, Iterable, Mapping

from . import _core
from ._core import (
    ComparabilityError,
    DuplicateRecord,
    InvalidRecord,
    IoError,
    JoinError,
    LcompError,
    ParseError,
    SchemaError,
    SpecError,
    StoreIndex,
    argmax_option,
    compute_candidate_likelihood,
    cross_model_contrast,
    debias,
    dual_contrast,
    ensemble,
    fixture_jsonl,
    fixture_names,
    highlight,
    majority_vote,
    normalize,
)

__all__ = [
    "ComparabilityError",
    "DuplicateRecord",
    "InvalidRecord",
    "IoError",
    "JoinError",
    "LcompError",
    "ParseError",
    "SchemaError",
    "SpecError",
    "StoreIndex",
    "argmax_option",
    "compare",
    "compute_candidate_likelihood",
    "cross_model_contrast",
    "debias",
    "describe_spec",
    "dual_contrast",
    "ensemble",
    "evaluate",
    "fixture_jsonl",
    "fixture_names",
    "highlight",
    "majority_vote",
    "normalize",
    "parse_specs",
]


def _spec_text(spec: str | Mapping[str, Any]) -> str:
    return spec if isinstance(spec, str) else json.dumps(dict(spec))


def parse_specs(document: str | Mapping[str, Any]) -> list[dict[str, Any]]:
    """Validates a spec document; returns each spec in canonical form."""
    return [json.loads(s) for s in _core.parse_specs(_spec_text(document))]


def describe_spec(spec: str | Mapping[str, Any]) -> str:
    return _core.describe_spec(_spec_text(spec))


def evaluate(
    index: StoreIndex,
    dataset: str,
    spec: str | Mapping[str, Any],
    *,
    skip_incomplete: bool = False,
    jobs: int = 1,
) -> dict[str, Any]:
    """Evaluates one spec over a dataset and returns the report."""
    return json.loads(_core.evaluate(index, dataset, _spec_text(spec), skip_incomplete, jobs))


def compare(reports: Iterable[Mapping[str, Any]]) -> str:
    """Pairwise accuracy deltas as CSV text."""
    return _core.compare([json.dumps(dict(r)) for r in reports])
