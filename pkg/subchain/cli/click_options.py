# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 Graz University of Technology.
#
# subchain is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Commonly used options for CLI commands."""

import click

from ..certify import CASES
from ..config import SUBCHAIN_SEED, SUBCHAIN_STRESS_RESTARTS
from ..losses import LOSSES
from ..maps import MAPS
from ..preimage import MODES, STRICT


# --map mf
def option_map(required: bool = True, choices=None):
    """Get parameter options for the factorization map."""
    return click.option(
        "--map",
        "map_id",
        required=required,
        type=click.Choice(sorted(choices or MAPS)),
        help="catalogued factorization map",
    )


# --loss hinge
def option_loss(default: str = "square"):
    """Get parameter options for the outer loss."""
    return click.option(
        "--loss",
        "loss_id",
        default=default,
        show_default=True,
        type=click.Choice(sorted(LOSSES)),
        help="catalogued scalar loss",
    )


# --point "point.json"
def option_point(required: bool = True):
    """Get parameter options for a parameter point file."""
    return click.option(
        "--point",
        metavar="string",
        required=required,
        help="JSON file holding the parameter point",
        type=click.File("r"),
    )


# --base "base.json"
def option_base(required: bool = False):
    """Get parameter options for a base point file."""
    return click.option(
        "--base",
        metavar="string",
        required=required,
        help="JSON file holding the base point",
        type=click.File("r"),
    )


# --target "target.json"
def option_target(required: bool = True):
    """Get parameter options for a target file."""
    return click.option(
        "--target",
        metavar="string",
        required=required,
        help="JSON file holding the target matrix, tensor or pair vector",
        type=click.File("r"),
    )


# --dataset "train.jsonl"
def option_dataset(required: bool = True):
    """Get parameter options for a JSON-lines dataset."""
    return click.option(
        "--dataset",
        metavar="string",
        required=required,
        help="JSON-lines dataset with a {\"d0\": ...} header",
        type=click.File("r"),
    )


# --labels "labels.json"
def option_labels():
    """Get parameter options for per-output loss labels."""
    return click.option(
        "--labels",
        metavar="string",
        help="JSON list of targets or labels of the outer loss",
        type=click.File("r"),
    )


# --t 1.0
def option_t(default: float = 1.0):
    """Get parameter options for the trust radius."""
    return click.option(
        "--t",
        "t",
        default=default,
        show_default=True,
        type=click.FloatRange(min=0.0, min_open=True),
        help="trust radius around the base point",
    )


# --d 3
def option_d(required: bool = False):
    """Get parameter options for the latent dimension."""
    return click.option(
        "--d",
        "d",
        required=required,
        type=click.IntRange(min=1),
        help="latent dimension",
    )


# --radius 0.1
def option_radius(default: float = 0.1):
    """Get parameter options for the sampling radius."""
    return click.option(
        "--radius",
        default=default,
        show_default=True,
        type=click.FloatRange(min=0.0, min_open=True),
        help="radius of the gradient sampling ball",
    )


# --samples 100
def option_samples(default: int = 0):
    """Get parameter options for the gradient sample count."""
    return click.option(
        "--samples",
        default=default,
        show_default=True,
        type=click.IntRange(min=0),
        help="number of sampled gradients, 0 to skip sampling",
    )


# --trials 1000
def option_trials(default: int = None):
    """Get parameter options for the number of trials."""
    return click.option(
        "--trials",
        default=default,
        type=click.IntRange(min=1),
        help="number of random trials",
    )


# --restarts 100
def option_restarts(default: int = SUBCHAIN_STRESS_RESTARTS):
    """Get parameter options for the number of stress-test restarts."""
    return click.option(
        "--restarts",
        default=default,
        show_default=True,
        type=click.IntRange(min=1),
        help="random restarts of every stress test",
    )


# --seed 7
def option_seed():
    """Get parameter options for the master seed."""
    return click.option(
        "--seed",
        default=SUBCHAIN_SEED,
        show_default=True,
        type=click.IntRange(min=0, max=2 ** 64 - 1),
        help="master seed of all random streams",
    )


# --mode best-effort
def option_mode():
    """Get parameter options for the admissibility mode."""
    return click.option(
        "--mode",
        default=STRICT,
        show_default=True,
        type=click.Choice(MODES),
        help="refuse targets outside the certified radius, or try anyway",
    )


# --case mf-orthant
def option_case(required: bool = True):
    """Get parameter options for the certificate case."""
    return click.option(
        "--case",
        required=required,
        type=click.Choice(CASES),
        help="certificate to run",
    )


# --tolerance FD_TOL=1e-7
def option_tolerance():
    """Get parameter options for tolerance overrides."""
    return click.option(
        "--tolerance",
        "tolerances",
        metavar="NAME=VALUE",
        multiple=True,
        help="override a tolerance the command applies, may be repeated",
    )


# --out "report.json"
def option_out():
    """Get parameter options for the report file."""
    return click.option(
        "--out",
        metavar="string",
        help="write the report to this file instead of stdout",
        type=click.Path(dir_okay=False, writable=True),
    )
