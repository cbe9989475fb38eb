# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 Graz University of Technology.
#
# subchain is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Commands evaluating maps and checking their Jacobians."""

import click
import numpy as np

from ..errors import InapplicableError, SchemaError
from ..maps import (check_adjoint, check_jacobian, eval_fm_sub, eval_mf_sub,
                    get_map)
from ..serialization import output_to_dict, point_from_dict
from ..types import PairIndexer
from ..workers import named_stream
from .click_options import (option_map, option_out, option_point, option_seed,
                            option_tolerance, option_trials)
from .util import get_run_config, handle_errors, read_json, write_report


def _read_pairs(stream):
    pairs = read_json(stream, "pairs")
    try:
        return [(int(i), int(j)) for i, j in pairs]
    except (TypeError, ValueError) as error:
        raise SchemaError(f"pairs: expected [[i, j], ...]: {error}") from None


def evaluate_submapping(map_id: str, point, pairs):
    """Evaluate the MF or FM submapping over 1-based ``pairs``."""
    if map_id == "mf":
        return eval_mf_sub(point, pairs)
    if map_id == "fm":
        subset = PairIndexer(point.d0, pairs)
        positions = [point.indexer.forward(i, j) - 1 for i, j in subset]
        values = eval_fm_sub(point.P, point.a[positions], subset)
        return {"d0": point.d0,
                "pairs": [{"i": i, "j": j, "value": float(value)}
                          for (i, j), value in zip(subset, values)]}
    raise InapplicableError(f"submappings exist for mf and fm, not {map_id}")


@click.command("eval")
@option_map()
@option_point()
@click.option("--pairs", metavar="string", type=click.File("r"),
              help="JSON list of 1-based [i, j] pairs of a submapping")
@option_tolerance()
@option_out()
@handle_errors
def evaluate_map(map_id, point, pairs, tolerances, out):
    """Evaluate a factorization map at a point.

    example call:
        subchain eval --map mf --point point.json [--pairs pairs.json]
    """
    config = get_run_config(out=out, tolerances=tolerances)
    parsed = point_from_dict(map_id, read_json(point, "point"))
    if pairs is not None:
        output = evaluate_submapping(map_id, parsed, _read_pairs(pairs))
        if not isinstance(output, dict):
            output = output.tolist()
    else:
        output = output_to_dict(map_id, get_map(map_id).evaluate(parsed),
                                parsed)
    return write_report(config, {"map": map_id, "output": output}, True)


@click.command("jacobian-check")
@option_map()
@option_point()
@option_trials(default=100)
@option_seed()
@option_tolerance()
@option_out()
@handle_errors
def jacobian_check(map_id, point, trials, seed, tolerances, out):
    """Compare the Jacobian with central differences.

    example call:
        subchain jacobian-check --map cp --point point.json --trials 100
    """
    config = get_run_config(seed=seed, out=out, tolerances=tolerances,
                            applied=("FD_STEP", "FD_TOL"))
    parsed = point_from_dict(map_id, read_json(point, "point"))
    out_size = get_map(map_id).evaluate(parsed).size
    rng = named_stream(seed, "jacobian-check")

    errors, gaps = [], []
    for _ in range(trials):
        direction = rng.standard_normal(parsed.size)
        direction /= max(np.linalg.norm(direction), 1e-300)
        errors.append(check_jacobian(map_id, parsed, direction,
                                     config.get("FD_STEP")))
        gaps.append(check_adjoint(map_id, parsed, direction,
                                  rng.standard_normal(out_size)))

    max_error = max(errors)
    passed = max_error <= config.get("FD_TOL")
    result = {
        "map": map_id,
        "directions": trials,
        "max_error": max_error,
        "max_adjoint_gap": max(gaps),
        "passed": passed,
    }
    return write_report(config, result, passed)
