# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 Graz University of Technology.
#
# subchain is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Tests of the certify and phase-sweep commands."""

from subchain.cli.certificates import certify_case, sweep


def test_certify_neumf_defect(invoke):
    """The exchange identity holds on random outputs."""
    args = ["--case", "neumf-defect", "--trials", "20", "--seed", "5"]
    result, report = invoke(certify_case, args)
    assert result.exit_code == 0
    assert report["result"]["verdict"] == "confirmed"
    assert report["result"]["statistics"]["trials"] == 20

    _, rerun = invoke(certify_case, args)
    assert rerun["result"] == report["result"]


def test_certify_mf_general(invoke):
    """Restarts and iterations reach the stress test."""
    result, report = invoke(certify_case, [
        "--case", "mf-general", "--size", "2", "--restarts", "3",
        "--tolerance", "STRESS_ITERATIONS=100"])
    assert result.exit_code == 0
    assert report["params"]["restarts"] == 3
    assert report["tolerances"]["SUBCHAIN_STRESS_ITERATIONS"] == 100


def test_certify_errors(invoke):
    """Unknown cases and inapplicable sizes are usage errors."""
    result, _ = invoke(certify_case, ["--case", "nope"])
    assert result.exit_code == 2
    result, _ = invoke(certify_case, ["--case", "mf-general", "--size", "1"])
    assert result.exit_code == 2


def test_phase_sweep(invoke):
    """Success rates are tabulated per latent dimension."""
    result, report = invoke(sweep, [
        "--map", "fm", "--size", "3", "--d", "2", "--d", "3",
        "--trials", "2"])
    assert result.exit_code == 0
    table = report["result"]["statistics"]["table"]
    assert [row["success_rate"] for row in table] == [1.0, 1.0]


def test_phase_sweep_usage(invoke):
    """Sizes must match the map."""
    result, _ = invoke(sweep, ["--map", "mf", "--size", "2", "--d", "1"])
    assert result.exit_code == 2
    result, _ = invoke(sweep, ["--map", "fm", "--size", "3", "--size", "3",
                               "--d", "1"])
    assert result.exit_code == 2


def test_certify_identity_tolerance(invoke):
    """A huge identity tolerance no longer flags the witness."""
    args = ["--case", "neumf-defect", "--trials", "5"]
    result, report = invoke(certify_case, args)
    assert result.exit_code == 0
    assert report["result"]["statistics"]["witness_unreachable"]
    assert report["tolerances"] == {"SUBCHAIN_IDENTITY_TOL": 1e-12}

    result, loose = invoke(certify_case, [
        *args, "--tolerance", "IDENTITY_TOL=1e9"])
    assert result.exit_code == 1
    assert loose["result"]["verdict"] == "inconclusive"
    assert not loose["result"]["statistics"]["witness_unreachable"]
    assert loose["tolerances"]["SUBCHAIN_IDENTITY_TOL"] == 1e9


def test_certify_kink_tolerance(invoke):
    """A kink tolerance wider than the sampling ball rejects every draw."""
    result, report = invoke(certify_case, [
        "--case", "ex-negative", "--trials", "1000",
        "--tolerance", "KINK_TOL=1e9"])
    assert result.exit_code == 1
    assert "kink" in result.output
    assert report is None


def test_certify_rejects_unused_tolerances(invoke):
    """Each case accepts only the tolerances it applies."""
    result, _ = invoke(certify_case, [
        "--case", "neumf-defect", "--trials", "5",
        "--tolerance", "SUCCESS_TOL=1"])
    assert result.exit_code == 2
    result, _ = invoke(certify_case, [
        "--case", "mf-orthant", "--tolerance", "KINK_TOL=1"])
    assert result.exit_code == 2
    result, _ = invoke(certify_case, [
        "--case", "mf-general", "--size", "2",
        "--tolerance", "SEED=3"])
    assert result.exit_code == 2


def test_phase_sweep_success_tolerance(invoke):
    """A loose success tolerance counts every descent as a success."""
    args = ["--map", "mf", "--size", "2", "--size", "2", "--d", "1",
            "--d", "2", "--trials", "2", "--restarts", "2",
            "--tolerance", "STRESS_ITERATIONS=20"]
    result, report = invoke(sweep, args)
    assert result.exit_code == 0
    rates = [row["success_rate"]
             for row in report["result"]["statistics"]["table"]]
    assert rates == [0.0, 1.0]

    result, loose = invoke(sweep, [*args, "--tolerance", "SUCCESS_TOL=1e9"])
    assert result.exit_code == 1
    assert loose["result"]["verdict"] == "refuted"
    rates = [row["success_rate"]
             for row in loose["result"]["statistics"]["table"]]
    assert rates == [1.0, 1.0]
