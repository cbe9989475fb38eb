# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 Graz University of Technology.
#
# subchain is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""CLI commands for subchain."""

import logging

import click

from ..version import __version__
from .certificates import certify_case, sweep
from .datasets import qualify
from .evaluation import evaluate_map, jacobian_check
from .oracles import chainrule, subdiff_fm, subdiff_gmf
from .solvers import preimage


@click.group()
@click.version_option(__version__, prog_name="subchain")
@click.option("--verbose", "-v", count=True,
              help="log solver decisions (-v) and debug details (-vv)")
def subchain(verbose):
    """Local surjectivity and subdifferential chain rules."""
    level = {0: logging.WARNING, 1: logging.INFO}.get(verbose, logging.DEBUG)
    logging.basicConfig(level=level,
                        format="%(levelname)s %(name)s: %(message)s")


subchain.add_command(evaluate_map)
subchain.add_command(jacobian_check)
subchain.add_command(preimage)
subchain.add_command(chainrule)
subchain.add_command(subdiff_fm)
subchain.add_command(subdiff_gmf)
subchain.add_command(qualify)
subchain.add_command(certify_case)
subchain.add_command(sweep)
