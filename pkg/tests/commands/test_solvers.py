# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 Graz University of Technology.
#
# subchain is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Tests of the preimage command."""

from subchain.cli.solvers import preimage

SMALL = {"rows": 2, "cols": 2, "data": [0.1, 0.0, 0.0, 0.05]}
FAR = {"rows": 2, "cols": 2, "data": [10.0, 0.0, 0.0, 10.0]}
FM_BASE = {"P": [[0.0] * 3] * 2, "a": [1.0, 1.0, 1.0]}
FM_TARGET = {"d0": 3, "pairs": [
    {"i": 1, "j": 2, "value": 0.001},
    {"i": 1, "j": 3, "value": -0.001},
    {"i": 2, "j": 3, "value": 0.0005},
]}


def test_mf_origin(invoke, json_file):
    """A small target is reached from the origin."""
    result, report = invoke(preimage, [
        "--map", "mf", "--target", json_file(SMALL), "--t", "1"])
    assert result.exit_code == 0
    assert report["mode"] == "strict"
    assert report["result"]["guaranteed"]
    assert report["result"]["residual"] <= 1e-9
    assert report["result"]["perturbation_norm"] <= 1.0


def test_mf_strict_refuses(invoke, json_file):
    """Strict mode refuses targets outside the certified radius."""
    result, report = invoke(preimage, [
        "--map", "mf", "--target", json_file(FAR)])
    assert result.exit_code == 1
    assert "error:" in result.output
    assert report is None


def test_mf_best_effort(invoke, json_file):
    """Best effort still answers, without a guarantee."""
    result, report = invoke(preimage, [
        "--map", "mf", "--target", json_file(FAR),
        "--mode", "best-effort"])
    assert not report["result"]["guaranteed"]
    assert result.exit_code in (0, 1)


def test_fm_at(invoke, json_file):
    """The FM construction runs at a base point."""
    result, report = invoke(preimage, [
        "--map", "fm", "--target", json_file(FM_TARGET),
        "--base", json_file(FM_BASE)])
    assert result.exit_code == 0
    assert report["result"]["guaranteed"]
    assert report["result"]["residual"] <= 1e-9


def test_usage_errors(invoke, json_file):
    """Missing base points and bad radii are usage errors."""
    result, _ = invoke(preimage, ["--map", "fm", "--target",
                                  json_file(FM_TARGET)])
    assert result.exit_code == 2
    assert "--base is required" in result.output

    result, _ = invoke(preimage, ["--map", "mf", "--target",
                                  json_file(SMALL), "--t", "0"])
    assert result.exit_code == 2

    result, _ = invoke(preimage, ["--map", "cp", "--target",
                                  json_file([[[1.0]]])])
    assert result.exit_code == 2


def test_radius_slack_override(invoke, json_file):
    """A wider radius slack admits the far target in strict mode."""
    result, report = invoke(preimage, [
        "--map", "mf", "--target", json_file(FAR),
        "--tolerance", "RADIUS_SLACK=100"])
    assert result.exit_code == 0
    assert report["result"]["guaranteed"]
    assert report["tolerances"] == {"SUBCHAIN_RADIUS_SLACK": 100.0,
                                    "SUBCHAIN_RESIDUAL_RTOL": 1e-9}


def test_unused_tolerance_rejected(invoke, json_file):
    """Tolerances the solvers never read cannot be overridden."""
    result, report = invoke(preimage, [
        "--map", "mf", "--target", json_file(SMALL),
        "--tolerance", "IDENTITY_TOL=1"])
    assert result.exit_code == 2
    assert "IDENTITY_TOL" in result.output
    assert report is None
