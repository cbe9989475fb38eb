# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 Graz University of Technology.
#
# subchain is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Numerical rank and complement bases."""

import numpy as np
import pytest

from subchain.errors import ShapeError
from subchain.linalg import complement_basis, numerical_rank, span_dimension


def test_rank_of_low_rank_product(rng):
    """A product of thin factors has their inner dimension as rank."""
    matrix = rng.standard_normal((6, 2)) @ rng.standard_normal((2, 5))
    assert numerical_rank(matrix) == 2
    assert numerical_rank(np.zeros((3, 3))) == 0
    assert numerical_rank(np.zeros((0, 3))) == 0


def test_complement_is_orthogonal(rng):
    """The complement basis is orthonormal and orthogonal to the span."""
    columns = [rng.standard_normal((5, 2)), rng.standard_normal(5)]
    complement = complement_basis(columns, 5)
    assert complement.span_rank == 3
    assert complement.dim == 2
    basis = complement.basis
    np.testing.assert_allclose(basis.T @ basis, np.eye(2), atol=1e-12)
    for block in columns:
        np.testing.assert_allclose(basis.T @ block.reshape(5, -1), 0.0,
                                   atol=1e-12)


def test_complement_of_dependent_columns(rng):
    """Repeated columns do not shrink the complement twice."""
    column = rng.standard_normal((4, 1))
    complement = complement_basis([column, 2 * column], 4)
    assert complement.span_rank == 1
    assert complement.dim == 3


def test_embed(rng):
    """Embedded coordinates stay orthogonal to the span."""
    column = rng.standard_normal(3)
    complement = complement_basis([column], 3)
    vector = complement.embed(rng.standard_normal(2))
    assert abs(vector @ column) <= 1e-12


def test_span_dimension(rng):
    """Span dimension counts independent columns of all blocks."""
    X = rng.standard_normal((4, 2))
    assert span_dimension([X, X[:, :1]], 4) == 2
    assert span_dimension([], 4) == 0


def test_invalid_ambient_dimension():
    """The ambient space needs a positive dimension."""
    with pytest.raises(ShapeError):
        complement_basis([], 0)
