# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 Graz University of Technology.
#
# subchain is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Tests of the qualify command."""

from subchain.cli.datasets import qualify


def test_qualified(invoke, dataset_file):
    """A qualified dataset passes."""
    result, report = invoke(qualify, ["--dataset", dataset_file])
    assert result.exit_code == 0
    assert report["result"] == {"d0": 6, "samples": 3, "qualified": True,
                                "violations": []}


def test_unqualified(invoke, tmp_path):
    """Violations are reported and fail the run."""
    path = tmp_path / "bad.jsonl"
    path.write_text('{"d0": 4}\n'
                    '{"y": 1, "x": {"1": 1, "2": 1, "4": 1}}\n'
                    '{"y": 0, "x": {"3": 1}}\n'
                    '{"y": 0, "x": {"2": 2, "4": 1}}\n')
    result, report = invoke(qualify, ["--dataset", str(path)])
    assert result.exit_code == 1
    assert report["result"]["violations"] == [[1, 3]]
    assert "share two or more features" in result.output


def test_malformed(invoke, tmp_path):
    """Schema errors name the line and exit with a usage error."""
    path = tmp_path / "broken.jsonl"
    path.write_text('{"d0": 2}\n{"y": 1, "x": {"3": 1}}\n')
    result, report = invoke(qualify, ["--dataset", str(path)])
    assert result.exit_code == 2
    assert "line 2" in result.output
    assert report is None
