# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 Graz University of Technology.
#
# subchain is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Preimage construction command."""

import click

from ..config import SUBCHAIN_RADIUS_SLACK
from ..errors import InapplicableError
from ..preimage import (solve_cp_dagger_at, solve_cp_origin, solve_fm_at,
                        solve_mf_at, solve_mf_origin)
from ..serialization import array_from_json, point_from_dict, solution_to_dict
from .click_options import (option_base, option_d, option_map, option_mode,
                            option_out, option_t, option_target,
                            option_tolerance)
from .util import get_run_config, handle_errors, read_json, write_report

SOLVABLE = ("mf", "fm", "cp", "cpdagger")


def solve(map_id: str, target, t: float, mode: str, base=None, d=None,
          slack: float = SUBCHAIN_RADIUS_SLACK):
    """Dispatch to the construction of ``map_id``.

    MF and CP start at the origin unless a base point is given; FM and
    CP-dagger always need one.
    """
    if map_id == "mf":
        if base is not None:
            return solve_mf_at(base, target, t, mode, slack)
        return solve_mf_origin(target, t, d or min(target.shape), mode,
                               slack)
    if map_id == "cp":
        if base is not None:
            raise InapplicableError("the CP construction starts at 0")
        if d is None:
            raise InapplicableError("--d is required for the CP origin")
        return solve_cp_origin(target, t, d, mode, slack)
    if base is None:
        raise InapplicableError(f"--base is required for map '{map_id}'")
    if map_id == "fm":
        return solve_fm_at(base, target, t, mode, slack)
    return solve_cp_dagger_at(base, target, t, mode, slack)


@click.command("preimage")
@option_map(choices=SOLVABLE)
@option_target()
@option_base()
@option_d()
@option_t()
@option_mode()
@option_tolerance()
@option_out()
@handle_errors
def preimage(map_id, target, base, d, t, mode, tolerances, out):
    """Construct a preimage within the trust radius.

    example call:
        subchain preimage --map mf --base base.json --target tgt.json --t 1
    """
    config = get_run_config(mode=mode, out=out, tolerances=tolerances,
                            applied=("RADIUS_SLACK", "RESIDUAL_RTOL"))
    parsed_target = array_from_json(read_json(target, "target"), "target")
    parsed_base = None
    if base is not None:
        parsed_base = point_from_dict(map_id, read_json(base, "base"))

    solution = solve(map_id, parsed_target, t, mode, parsed_base, d,
                     config.get("RADIUS_SLACK"))
    passed = solution.within(config.get("RESIDUAL_RTOL"))
    return write_report(config, solution_to_dict(solution), passed)
