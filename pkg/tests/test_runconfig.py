# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 Graz University of Technology.
#
# subchain is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Run configuration and tolerance overrides."""

import pytest

from subchain.config import SUBCHAIN_FD_TOL, SUBCHAIN_STRESS_RESTARTS
from subchain.errors import SchemaError
from subchain.runconfig import RunConfig, default_tolerances


def test_defaults():
    """Tolerances start from the package constants."""
    run = RunConfig("eval")
    assert run.get("FD_TOL") == SUBCHAIN_FD_TOL
    assert run.tolerances == default_tolerances()
    assert run.to_dict()["command"] == "eval"


def test_override():
    """Names may be given with or without prefix and in any case."""
    run = RunConfig("certify").override(
        ["fd_tol=1e-3", "SUBCHAIN_STRESS_RESTARTS=5"])
    assert run.get("FD_TOL") == 1e-3
    assert run.get("STRESS_RESTARTS") == 5
    assert isinstance(run.get("STRESS_RESTARTS"), int)
    assert RunConfig("certify").get("STRESS_RESTARTS") == (
        SUBCHAIN_STRESS_RESTARTS)


@pytest.mark.parametrize("assignment", [
    "UNKNOWN=1",
    "FD_TOL",
    "FD_TOL=small",
    "FD_TOL=-1",
])
def test_invalid_override(assignment):
    """Unknown names, missing values and negatives are rejected."""
    with pytest.raises(SchemaError):
        RunConfig("eval").override([assignment])


def test_applied_tolerances():
    """A run restricted to some tolerances rejects all others."""
    run = RunConfig("preimage",
                    tolerances=default_tolerances(["radius_slack"]))
    assert run.tolerances == {"SUBCHAIN_RADIUS_SLACK": 1e-12}
    assert run.override(["RADIUS_SLACK=0.5"]).get("radius_slack") == 0.5
    with pytest.raises(SchemaError):
        run.override(["FD_TOL=1"])
    with pytest.raises(SchemaError):
        RunConfig("eval", tolerances={}).override(["FD_TOL=1"])
    with pytest.raises(KeyError):
        default_tolerances(["UNKNOWN"])
