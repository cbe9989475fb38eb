# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 Graz University of Technology.
#
# subchain is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Pytest configuration.

Fixtures for seeded randomness, the click runner and JSON input files.
"""

import json

import numpy as np
import pytest
from click.testing import CliRunner

from subchain.fmdata import SparseSample, dump_dataset


@pytest.fixture()
def rng():
    """Seeded generator, fresh for every test."""
    return np.random.default_rng(20260101)


@pytest.fixture()
def runner():
    """Click test runner."""
    return CliRunner()


@pytest.fixture()
def json_file(tmp_path):
    """Write a JSON document into the test directory, return its path."""
    names = iter(range(1000))

    def write(document):
        path = tmp_path / f"input-{next(names)}.json"
        path.write_text(json.dumps(document))
        return str(path)

    return write


@pytest.fixture()
def invoke(runner, tmp_path):
    """Run a command with ``--out`` and return the result and report."""

    def run(command, args):
        out = tmp_path / "report.json"
        if out.exists():
            out.unlink()
        result = runner.invoke(command, [*args, "--out", str(out)])
        report = json.loads(out.read_text()) if out.exists() else None
        return result, report

    return run


@pytest.fixture()
def qualified_samples():
    """Three samples over six features sharing at most one feature."""
    return [
        SparseSample((1, 2, 3), (1.0, 2.0, -1.0), y=1.0),
        SparseSample((3, 4), (0.5, 1.5), y=-1.0),
        SparseSample((1, 5, 6), (1.0, 1.0, 2.0), y=0.5),
    ]


@pytest.fixture()
def dataset_file(tmp_path, qualified_samples):
    """JSON-lines file of the qualified samples."""
    path = tmp_path / "train.jsonl"
    with open(path, "w") as stream:
        dump_dataset(qualified_samples, 6, stream)
    return str(path)
