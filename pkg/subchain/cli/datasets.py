# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 Graz University of Technology.
#
# subchain is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Dataset qualification command."""

import click

from ..fmdata import check_qualification, load_dataset
from .click_options import option_dataset, option_out, option_tolerance
from .util import get_run_config, handle_errors, write_report


@click.command("qualify")
@option_dataset()
@option_tolerance()
@option_out()
@handle_errors
def qualify(dataset, tolerances, out):
    """Check that no two samples share two features.

    example call:
        subchain qualify --dataset train.jsonl
    """
    config = get_run_config(out=out, tolerances=tolerances)
    d0, samples = load_dataset(dataset)
    qualified, violations = check_qualification(samples, d0)
    if not qualified:
        click.secho(f"{len(violations)} sample pairs share two or more "
                    f"features", fg="red", err=True)
    result = {
        "d0": d0,
        "samples": len(samples),
        "qualified": qualified,
        "violations": [list(pair) for pair in violations],
    }
    return write_report(config, result, qualified)
