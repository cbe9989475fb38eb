# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 Graz University of Technology.
#
# subchain is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""JSON encodings of matrices, tensors, pair vectors, points and reports.

Matrix::

    {"rows": 2, "cols": 2, "data": [1.0, 0.0, 0.0, 1.0]}

Tensors add ``"shape"``; pair-coefficient vectors list their pairs::

    {"d0": 3, "pairs": [{"i": 1, "j": 2, "value": 0.5}, ...]}

Infinite and undefined floats are written as ``null``.
"""

import dataclasses
import json
import math
from typing import TextIO

import numpy as np

from .errors import SchemaError
from .maps import get_map
from .types import PairIndexer


def jsonable(value):
    """Convert numpy values and report objects into plain JSON data."""
    if hasattr(value, "to_dict"):
        return jsonable(value.to_dict())
    if isinstance(value, dict):
        return {str(key): jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(item) for item in value]
    if isinstance(value, np.ndarray):
        return jsonable(value.tolist())
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if math.isfinite(value) else None
    return value


def matrix_to_dict(matrix) -> dict:
    """Encode a matrix in row-major order.

    >>> matrix_to_dict(np.eye(2))
    {'rows': 2, 'cols': 2, 'data': [1.0, 0.0, 0.0, 1.0]}
    """
    matrix = np.asarray(matrix, dtype=np.float64)
    rows, cols = matrix.shape
    return {"rows": rows, "cols": cols, "data": matrix.ravel().tolist()}


def tensor_to_dict(tensor) -> dict:
    """Encode a third-order tensor, unfolded along its first mode."""
    tensor = np.asarray(tensor, dtype=np.float64)
    n1, n2, n3 = tensor.shape
    return {"rows": n1, "cols": n2 * n3, "shape": [n1, n2, n3],
            "data": tensor.ravel().tolist()}


def pairs_to_dict(values, indexer: PairIndexer) -> dict:
    """Encode values over the pairs of ``indexer``."""
    return {
        "d0": indexer.d0,
        "pairs": [{"i": i, "j": j, "value": float(value)}
                  for (i, j), value in zip(indexer, np.ravel(values))],
    }


def _reals(data, name):
    try:
        return np.array(data, dtype=np.float64)
    except (TypeError, ValueError) as error:
        raise SchemaError(f"{name}: expected numbers: {error}") from error


def pairs_from_dict(data: dict, name: str = "pairs"):
    """Decode a pair-coefficient vector into an indexer and its values."""
    try:
        d0 = int(data["d0"])
        pairs = [(int(p["i"]), int(p["j"])) for p in data["pairs"]]
        values = {pair: float(p["value"])
                  for pair, p in zip(pairs, data["pairs"])}
    except (KeyError, TypeError, ValueError) as error:
        raise SchemaError(f"{name}: malformed pair vector: {error}") from error
    if len(values) != len(pairs):
        raise SchemaError(f"{name}: duplicate pairs")
    try:
        indexer = PairIndexer(d0, pairs)
    except ValueError as error:
        raise SchemaError(f"{name}: {error}") from error
    return indexer, np.array([values[pair] for pair in indexer])


def array_from_json(data, name: str = "array") -> np.ndarray:
    """Decode a matrix, tensor or pair dict, or a nested list."""
    if not isinstance(data, dict):
        return _reals(data, name)
    if "pairs" in data:
        indexer, values = pairs_from_dict(data, name)
        if len(indexer) != indexer.d0 * (indexer.d0 - 1) // 2:
            raise SchemaError(f"{name}: every feature pair needs a value")
        return values

    try:
        shape = data.get("shape") or (data["rows"], data["cols"])
        shape = tuple(int(s) for s in shape)
        values = _reals(data["data"], name)
    except (KeyError, TypeError, ValueError) as error:
        raise SchemaError(f"{name}: malformed array: {error}") from error
    if values.ndim != 1 or values.size != int(np.prod(shape)):
        raise SchemaError(
            f"{name}: {values.size} entries do not fill shape {shape}"
        )
    return values.reshape(shape)


def point_to_dict(point) -> dict:
    """Encode every field of a parameter point."""
    encoded = {}
    for field in dataclasses.fields(point):
        value = getattr(point, field.name)
        if value.ndim == 2:
            encoded[field.name] = matrix_to_dict(value)
        else:
            encoded[field.name] = value.tolist()
    return encoded


def point_from_dict(map_id: str, data) -> object:
    """Decode the parameter point of ``map_id``."""
    point_type = get_map(map_id).point_type
    if not isinstance(data, dict):
        raise SchemaError(f"point of '{map_id}' must be a JSON object")
    names = [field.name for field in dataclasses.fields(point_type)]
    missing = [name for name in names if name not in data]
    if missing:
        raise SchemaError(
            f"point of '{map_id}' misses field(s) {', '.join(missing)}"
        )
    return point_type(**{
        name: array_from_json(data[name], name) for name in names
    })


def output_to_dict(map_id: str, output, point=None):
    """Encode a map output in the format matching its shape."""
    output = np.asarray(output)
    if map_id == "fm" and point is not None:
        return pairs_to_dict(output, point.indexer)
    if output.ndim == 2:
        return matrix_to_dict(output)
    if output.ndim == 3:
        return tensor_to_dict(output)
    return output.tolist()


def solution_to_dict(solution) -> dict:
    """Encode a preimage solution as a solver report."""
    return {
        "residual": solution.residual,
        "perturbation_norm": solution.perturbation_norm,
        "t": solution.t,
        "guaranteed": solution.guaranteed,
        "certified_radius": jsonable(solution.certified_radius),
        "solution": point_to_dict(solution.point),
    }


def load_json(stream: TextIO, name: str = "input"):
    """Parse a JSON document, raising :class:`SchemaError` on failure."""
    try:
        return json.load(stream)
    except json.JSONDecodeError as error:
        raise SchemaError(f"{name}: invalid JSON: {error}") from error


def dumps(document) -> str:
    """Serialize with sorted keys so reruns compare byte for byte."""
    return json.dumps(jsonable(document), indent=2, sort_keys=True)
