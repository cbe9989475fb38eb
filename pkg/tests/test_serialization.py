# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 Graz University of Technology.
#
# subchain is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""JSON encodings of arrays, points and reports."""

import io
import json

import numpy as np
import pytest

from subchain.errors import SchemaError
from subchain.maps import get_map
from subchain.serialization import (array_from_json, dumps, jsonable,
                                    load_json, output_to_dict, point_from_dict,
                                    point_to_dict)
from subchain.types import FactorPoint


def test_jsonable():
    """Numpy values become plain JSON, infinities become null."""
    document = jsonable({"a": np.arange(2), "b": np.float64(np.inf),
                         "c": (np.bool_(True), np.int64(3))})
    assert document == {"a": [0, 1], "b": None, "c": [True, 3]}
    assert json.loads(dumps({"z": 1, "a": np.nan})) == {"a": None, "z": 1}


def test_array_formats():
    """Matrices, tensors, pair vectors and nested lists decode."""
    matrix = array_from_json({"rows": 2, "cols": 1, "data": [1, 2]})
    assert matrix.shape == (2, 1)
    tensor = array_from_json({"rows": 1, "cols": 4, "shape": [1, 2, 2],
                              "data": [1, 2, 3, 4]})
    assert tensor[0, 1, 0] == 3.0
    pairs = array_from_json({"d0": 3, "pairs": [
        {"i": 2, "j": 3, "value": 3.0},
        {"i": 1, "j": 2, "value": 1.0},
        {"i": 1, "j": 3, "value": 2.0},
    ]})
    np.testing.assert_array_equal(pairs, [1.0, 2.0, 3.0])
    np.testing.assert_array_equal(array_from_json([[1, 2]]), [[1.0, 2.0]])


@pytest.mark.parametrize("data", [
    {"rows": 2, "cols": 2, "data": [1, 2, 3]},
    {"rows": 2, "data": [1, 2]},
    {"d0": 3, "pairs": [{"i": 1, "j": 2, "value": 1.0}]},
    {"d0": 2, "pairs": [{"i": 2, "j": 1, "value": 1.0}]},
    [["a"]],
])
def test_invalid_arrays(data):
    """Malformed arrays raise schema errors."""
    with pytest.raises(SchemaError):
        array_from_json(data, "x")


def test_points(rng):
    """Encoded points decode to the same values."""
    point = get_map("neufm").random_point(rng)
    decoded = point_from_dict("neufm", json.loads(dumps(
        point_to_dict(point))))
    np.testing.assert_array_equal(decoded.pack(), point.pack())
    with pytest.raises(SchemaError, match="Y"):
        point_from_dict("mf", {"X": [[1.0]]})
    with pytest.raises(SchemaError):
        point_from_dict("mf", [1.0])


def test_outputs():
    """Outputs are encoded by shape, FM outputs by pair."""
    point = FactorPoint(np.ones((1, 2)), np.ones((1, 3)))
    assert output_to_dict("mf", np.ones((2, 3)), point)["cols"] == 3
    assert output_to_dict("cp", np.ones((2, 2, 2)))["shape"] == [2, 2, 2]
    fm = get_map("fm")
    fm_point = fm.random_point(np.random.default_rng(1))
    encoded = output_to_dict("fm", fm.evaluate(fm_point), fm_point)
    assert [(p["i"], p["j"]) for p in encoded["pairs"]] == [
        (1, 2), (1, 3), (2, 3)]


def test_load_json():
    """Invalid JSON raises a schema error naming the input."""
    assert load_json(io.StringIO('{"a": 1}')) == {"a": 1}
    with pytest.raises(SchemaError, match="target"):
        load_json(io.StringIO("{"), "target")
