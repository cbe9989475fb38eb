# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 Graz University of Technology.
#
# subchain is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Subdifferential oracle commands."""

import click
import numpy as np

from ..errors import SchemaError
from ..fmdata import build_qualified, load_dataset
from ..losses import LOSSES, labelled_loss, make_loss
from ..maps import get_map
from ..serialization import array_from_json, point_from_dict
from ..subdiff import (FMTrainingComposite, GMFComposite, MapComposite,
                       chainrule_upper, contains_zero, fm_train_subdiff,
                       gmf_subdiff, inclusion_residuals, sample_gradients,
                       support_gap)
from .click_options import (option_dataset, option_labels, option_loss,
                            option_map, option_out, option_point,
                            option_radius, option_samples, option_seed,
                            option_tolerance)
from .util import get_run_config, handle_errors, read_json, write_report

ORACLE_TOLERANCES = ("INCLUSION_TOL", "KINK_TOL", "MAX_KINK_RATE",
                     "ZERO_TOL")


def _outer_loss(loss_id, labels_file, count: int):
    if labels_file is None:
        return make_loss(loss_id)
    labels = np.asarray(read_json(labels_file, "labels"), dtype=np.float64)
    if labels.shape != (count,):
        raise SchemaError(f"labels: expected {count} values")
    return labelled_loss(loss_id, labels)


def oracle_result(zonotope, composite, vector, config, samples, radius):
    """Assemble the upper set, the zero test and an optional sample check.

    Sampled gradients must lie in the upper set at their own point and
    below it in support.
    """
    has_zero, witness, distance = contains_zero(zonotope,
                                                config.get("ZERO_TOL"))
    result = {
        "upper": zonotope.to_dict(),
        "contains_zero": has_zero,
        "zero_distance": distance,
        "zero_witness": witness.tolist(),
    }
    if samples == 0:
        return result, True

    sample = sample_gradients(composite, vector, radius, samples,
                              config.seed, config.get("MAX_KINK_RATE"))
    residuals = inclusion_residuals(composite.upper, sample)
    gaps = support_gap(zonotope, sample, seed=config.seed,
                       tol=config.get("INCLUSION_TOL"))
    inclusion_ok = bool(np.all(residuals <= config.get("INCLUSION_TOL")))
    result["sample"] = sample.to_dict()
    result["max_inclusion_residual"] = float(np.max(residuals))
    result["support_gap"] = gaps.to_dict()
    result["inclusion_ok"] = inclusion_ok
    return result, inclusion_ok


@click.command("chainrule")
@option_map()
@option_point()
@option_loss()
@option_labels()
@option_samples()
@option_radius()
@option_seed()
@option_tolerance()
@option_out()
@handle_errors
def chainrule(map_id, point, loss_id, labels, samples, radius, seed,
              tolerances, out):
    """Compute the chain-rule upper set of loss ∘ map.

    example call:
        subchain chainrule --map mf --point point.json --loss absolute
    """
    config = get_run_config(seed=seed, out=out, tolerances=tolerances,
                            applied=ORACLE_TOLERANCES)
    parsed = point_from_dict(map_id, read_json(point, "point"))
    image_size = get_map(map_id).evaluate(parsed).size
    outer = _outer_loss(loss_id, labels, image_size)

    kink_tol = config.get("KINK_TOL")
    composite = MapComposite(map_id, parsed, outer, kink_tol)
    zonotope = chainrule_upper(outer, map_id, parsed, kink_tol)
    result, passed = oracle_result(zonotope, composite, parsed.pack(),
                                   config, samples, radius)
    result.update({"map": map_id, "loss": loss_id})
    return write_report(config, result, passed)


@click.command("subdiff-fm")
@option_dataset()
@option_point()
@option_loss()
@option_samples()
@option_radius()
@option_seed()
@option_tolerance()
@option_out()
@handle_errors
def subdiff_fm(dataset, point, loss_id, samples, radius, seed, tolerances,
               out):
    """Exact subdifferential of the FM training loss at ``P``.

    The point file holds the matrix ``P``; labels come from the dataset.

    example call:
        subchain subdiff-fm --dataset train.jsonl --point P.json
    """
    config = get_run_config(seed=seed, out=out, tolerances=tolerances,
                            applied=ORACLE_TOLERANCES)
    d0, records = load_dataset(dataset)
    qualified = build_qualified(records, d0)
    P = array_from_json(read_json(point, "point"), "P")
    if P.ndim != 2:
        raise SchemaError("P must be a matrix")

    losses = labelled_loss(loss_id, qualified.labels)
    kink_tol = config.get("KINK_TOL")
    zonotope = fm_train_subdiff(qualified, P, losses, kink_tol)
    composite = FMTrainingComposite(qualified, P.shape[0], losses,
                                    kink_tol)
    result, passed = oracle_result(zonotope, composite, P.ravel(), config,
                                   samples, radius)
    result.update({
        "d0": d0,
        "d": P.shape[0],
        "samples_in_dataset": len(records),
        "pairs": len(qualified.pairs),
        "loss": loss_id,
    })
    return write_report(config, result, passed)


@click.command("subdiff-gmf")
@option_point()
@option_loss(default="square")
@click.option("--activation", default="shifted_relu", show_default=True,
              type=click.Choice(sorted(LOSSES)),
              help="scalar activation applied to every observed entry")
@click.option("--shift", default=0.0, show_default=True, type=float,
              help="kink location of the shifted_relu activation")
@option_samples()
@option_radius()
@option_seed()
@option_tolerance()
@option_out()
@handle_errors
def subdiff_gmf(point, loss_id, activation, shift, samples, radius, seed,
                tolerances, out):
    """Subdifferential of the generalized MF loss.

    The point file holds ``v``, the GMF point ``h, P, Q``, the observed
    1-based ``pairs`` and one ``labels`` entry per pair.

    example call:
        subchain subdiff-gmf --point gmf.json --loss logistic
    """
    config = get_run_config(seed=seed, out=out, tolerances=tolerances,
                            applied=ORACLE_TOLERANCES)
    data = read_json(point, "point")
    if not isinstance(data, dict):
        raise SchemaError("point: expected a JSON object")
    try:
        v = float(data["v"])
        pairs = [(int(i), int(j)) for i, j in data["pairs"]]
        labels = np.asarray(data.get("labels", np.zeros(len(pairs))),
                            dtype=np.float64)
    except (KeyError, TypeError, ValueError) as error:
        raise SchemaError(f"point: {error}") from error
    if labels.shape != (len(pairs),):
        raise SchemaError(f"point: expected {len(pairs)} labels")
    gmf = point_from_dict("gmf", data)

    if activation == "shifted_relu":
        sigma = make_loss(activation, shift=shift)
    else:
        sigma = make_loss(activation)
    outer = labelled_loss(loss_id, labels)
    kink_tol = config.get("KINK_TOL")
    zonotope = gmf_subdiff(v, gmf.h, gmf.P, gmf.Q, pairs, sigma, outer,
                           kink_tol)

    d, m = gmf.P.shape
    composite = GMFComposite(d, m, gmf.Q.shape[1], pairs, sigma, outer,
                             kink_tol)
    vector = GMFComposite.pack(v, gmf.h, gmf.P, gmf.Q)
    result, passed = oracle_result(zonotope, composite, vector, config,
                                   samples, radius)
    result.update({"loss": loss_id, "activation": activation})
    return write_report(config, result, passed)
