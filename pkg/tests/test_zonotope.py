# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 Graz University of Technology.
#
# subchain is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Zonotope arithmetic, support functions and distances."""

import numpy as np
import pytest

from subchain.errors import ShapeError
from subchain.zonotope import SubgradientZonotope


@pytest.fixture()
def square():
    """The box ``[-1, 1]²``."""
    return SubgradientZonotope([0.0, 0.0], np.eye(2), [-1.0, -1.0],
                               [1.0, 1.0])


def test_support_of_box(square):
    """The support of a box is the L1 norm of the direction."""
    assert square.support([1.0, -2.0]) == 3.0


def test_support_matches_vertices(rng):
    """Support equals the maximum over the vertices."""
    generators = rng.standard_normal((3, 3))
    lo = -rng.uniform(0.0, 1.0, 3)
    hi = rng.uniform(0.0, 1.0, 3)
    zonotope = SubgradientZonotope(rng.standard_normal(3), generators, lo,
                                   hi)
    corners = np.array(np.meshgrid(*zip(lo, hi))).reshape(3, -1).T
    vertices = zonotope.center + corners @ generators.T
    for direction in rng.standard_normal((10, 3)):
        assert zonotope.support(direction) == pytest.approx(
            np.max(vertices @ direction))


def test_minkowski_sum_and_linear_map(square, rng):
    """Supports add under sums and pull back under linear maps."""
    total = square + SubgradientZonotope.point([1.0, 2.0])
    assert total.support([1.0, 0.0]) == 2.0

    A = rng.standard_normal((3, 2))
    image = square.linear_map(A)
    direction = rng.standard_normal(3)
    assert image.support(direction) == pytest.approx(
        square.support(A.T @ direction))


def test_distance_and_witness(square):
    """Distance to a box and the minimizing coefficients."""
    distance, coefficients = square.distance([3.0, 0.5])
    assert distance == pytest.approx(2.0)
    np.testing.assert_allclose(coefficients, [1.0, 0.5])
    assert square.contains([0.9, -0.9], tol=1e-12)
    assert not square.contains([1.1, 0.0], tol=1e-3)


def test_folded_drops_degenerate_generators():
    """Fixed intervals move into the center."""
    zonotope = SubgradientZonotope([0.0, 0.0], [[1.0, 0.0, 0.0],
                                                [0.0, 1.0, 0.0]],
                                   [2.0, -1.0, -1.0], [2.0, 1.0, 1.0])
    folded = zonotope.folded()
    assert folded.count == 1
    np.testing.assert_array_equal(folded.center, [2.0, 0.0])


def test_invalid_zonotopes(square):
    """Shape and order violations raise."""
    with pytest.raises(ShapeError):
        SubgradientZonotope([0.0], [[1.0]], [1.0], [0.0])
    with pytest.raises(ShapeError):
        SubgradientZonotope([0.0], [[1.0]], [0.0, 1.0], [1.0, 2.0])
    with pytest.raises(ShapeError):
        square + SubgradientZonotope.point([0.0])
    with pytest.raises(ShapeError):
        square.support([1.0])


def test_dict_form(square):
    """The dict form restores the zonotope."""
    again = SubgradientZonotope.from_dict(square.to_dict())
    np.testing.assert_array_equal(again.generators, square.generators)
    assert SubgradientZonotope.from_dict({"center": [1.0]}).count == 0
