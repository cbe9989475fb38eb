# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 Graz University of Technology.
#
# subchain is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Certificate and phase-sweep commands."""

import click

from ..certify import INCONCLUSIVE, REFUTED, certify, phase_sweep
from .click_options import (option_case, option_out, option_restarts,
                            option_seed, option_tolerance, option_trials)
from .util import get_run_config, handle_errors, write_report

VERDICT_COLORS = {REFUTED: "red", INCONCLUSIVE: "yellow"}

STRESS_TOLERANCES = ("STRESS_HALVINGS", "STRESS_ITERATIONS", "SUCCESS_TOL")

CASE_TOLERANCES = {
    "ex-negative": ("INCLUSION_TOL", "KINK_TOL", "MAX_KINK_RATE"),
    "mf-orthant": (),
    "mf-general": STRESS_TOLERANCES,
    "fm-general": STRESS_TOLERANCES,
    "neumf-defect": ("IDENTITY_TOL",),
}


def _stress_options(config) -> dict:
    return {
        "iterations": config.get("STRESS_ITERATIONS"),
        "halvings": config.get("STRESS_HALVINGS"),
        "success_tol": config.get("SUCCESS_TOL"),
    }


def _options(case: str, trials, restarts, config) -> dict:
    """Keyword arguments of the certificate ``case``.

    Every tolerance in ``CASE_TOLERANCES[case]`` is passed on.
    """
    options = {}
    if trials is not None:
        options["samples" if case == "ex-negative" else "trials"] = trials
    if case in ("mf-general", "fm-general"):
        options["restarts"] = restarts
        options.update(_stress_options(config))
    elif case == "ex-negative":
        options["kink_tol"] = config.get("KINK_TOL")
        options["max_kink_rate"] = config.get("MAX_KINK_RATE")
        options["inclusion_tol"] = config.get("INCLUSION_TOL")
    elif case == "neumf-defect":
        options["identity_tol"] = config.get("IDENTITY_TOL")
    return options


def _notice(report):
    if not report.confirmed:
        click.secho(f"{report.case}: {report.verdict}",
                    fg=VERDICT_COLORS[report.verdict], err=True)


@click.command("certify")
@option_case()
@click.option("--size", default=3, show_default=True,
              type=click.IntRange(min=1),
              help="n for mf-general, d0 for fm-general")
@option_trials()
@option_restarts()
@option_seed()
@option_tolerance()
@option_out()
@handle_errors
def certify_case(case, size, trials, restarts, seed, tolerances, out):
    """Run one seeded certificate.

    example call:
        subchain certify --case ex-negative --seed 7
    """
    config = get_run_config(seed=seed, out=out, tolerances=tolerances,
                            applied=CASE_TOLERANCES[case])
    options = _options(case, trials, restarts, config)
    if case == "mf-general":
        options["n"] = size
    elif case == "fm-general":
        options["d0"] = size

    report = certify(case, seed=seed, **options)
    _notice(report)
    return write_report(config, report, report.confirmed)


@click.command("phase-sweep")
@click.option("--map", "map_id", required=True,
              type=click.Choice(["mf", "fm"]), help="map to sweep")
@click.option("--size", "sizes", required=True, multiple=True,
              type=click.IntRange(min=1),
              help="m and n for mf (repeat twice), d0 for fm")
@click.option("--d", "d_range", required=True, multiple=True,
              type=click.IntRange(min=1), help="latent dimension to test")
@option_trials(default=10)
@option_restarts(default=20)
@option_seed()
@option_tolerance()
@option_out()
@handle_errors
def sweep(map_id, sizes, d_range, trials, restarts, seed, tolerances, out):
    """Tabulate preimage success rates across latent dimensions.

    example call:
        subchain phase-sweep --map mf --size 2 --size 2 --d 1 --d 2
    """
    config = get_run_config(seed=seed, out=out, tolerances=tolerances,
                            applied=STRESS_TOLERANCES)
    if map_id == "mf":
        if len(sizes) != 2:
            raise click.UsageError("mf sweeps need --size m --size n")
        size = tuple(sizes)
    else:
        if len(sizes) != 1:
            raise click.UsageError("fm sweeps need a single --size d0")
        size = sizes[0]

    report = phase_sweep(map_id, size, d_range, trials=trials, seed=seed,
                         restarts=restarts, **_stress_options(config))
    _notice(report)
    return write_report(config, report, report.confirmed)
