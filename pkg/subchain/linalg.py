# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 Graz University of Technology.
#
# subchain is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Small dense linear algebra: numerical rank and complement bases."""

import dataclasses

import numpy as np
import scipy.linalg

from .config import SUBCHAIN_RANK_RTOL
from .errors import ShapeError


def numerical_rank(matrix, rtol: float = SUBCHAIN_RANK_RTOL) -> int:
    """Count singular values above ``max(shape)·σ_max·rtol``.

    >>> numerical_rank([[1.0, 0.0], [0.0, 0.0]])
    1
    """
    matrix = np.atleast_2d(np.asarray(matrix, dtype=np.float64))
    if matrix.size == 0:
        return 0
    values = scipy.linalg.svdvals(matrix)
    if values[0] == 0.0:
        return 0
    threshold = max(matrix.shape) * values[0] * rtol
    return int(np.sum(values > threshold))


@dataclasses.dataclass(frozen=True, eq=False)
class SubspaceBasis:
    """Orthonormal basis of the complement of a column span."""

    ambient_dim: int
    basis: np.ndarray
    span_rank: int

    @property
    def dim(self) -> int:
        """Dimension of the complement."""
        return self.basis.shape[1]

    def embed(self, coordinates) -> np.ndarray:
        """Map complement coordinates back to the ambient space."""
        return self.basis @ np.asarray(coordinates, dtype=np.float64)


def _stack(columns, ambient_dim: int) -> np.ndarray:
    blocks = [
        np.asarray(block, dtype=np.float64).reshape(ambient_dim, -1)
        for block in columns
        if np.size(block)
    ]
    if not blocks:
        return np.zeros((ambient_dim, 0))
    return np.hstack(blocks)


def span_dimension(columns, ambient_dim: int) -> int:
    """Get ``dim span`` of column blocks living in ``R^ambient_dim``."""
    return numerical_rank(_stack(columns, ambient_dim))


def complement_basis(columns, ambient_dim: int) -> SubspaceBasis:
    """Get an orthonormal basis of the orthogonal complement of a span.

    ``columns`` is a sequence of vectors or column blocks with
    ``ambient_dim`` rows. The span is read off a column-pivoted QR
    factorization; its numerical rank decides where the complement starts
    in the full orthogonal factor.

    >>> complement_basis([], 2).basis
    array([[1., 0.],
           [0., 1.]])
    """
    if ambient_dim < 1:
        raise ShapeError("ambient dimension must be at least 1")

    stacked = _stack(columns, ambient_dim)
    if stacked.shape[1] == 0:
        return SubspaceBasis(ambient_dim, np.eye(ambient_dim), 0)

    rank = numerical_rank(stacked)
    q, _, _ = scipy.linalg.qr(stacked, mode="full", pivoting=True)
    return SubspaceBasis(ambient_dim, q[:, rank:], rank)
