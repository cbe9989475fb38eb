# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 Graz University of Technology.
#
# subchain is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Sign-pattern target sets of the unreachability certificates.

A pattern fixes, per entry, a strict sign (``+1``/``-1``), an exact zero
(``0``) or nothing (free). Its relative interior is what the negative
examples show to be out of reach of low latent dimensions.
"""

import dataclasses

import numpy as np
import scipy.linalg

from .config import SUBCHAIN_KINK_TOL
from .errors import DimensionError, InvariantError
from .types import PairIndexer, as_vector, features_from_pairs

POSITIVE_RANGE = (0.1, 1.0)


@dataclasses.dataclass(frozen=True, eq=False)
class SignPattern:
    """Entrywise sign constraints of a target set.

    >>> pattern = orthant_pattern()
    >>> bool(pattern.contains(np.array([[1.0, 1.0], [1.0, -1.0]])))
    True
    """

    signs: np.ndarray
    free: np.ndarray

    def __post_init__(self):
        """Freeze the arrays."""
        signs = np.sign(np.array(self.signs, dtype=np.float64))
        free = np.array(self.free, dtype=bool)
        if signs.shape != free.shape:
            raise InvariantError("signs and free mask differ in shape")
        signs[free] = 0.0
        for name, value in (("signs", signs), ("free", free)):
            value.setflags(write=False)
            object.__setattr__(self, name, value)

    @property
    def shape(self):
        """Shape of the constrained objects."""
        return self.signs.shape

    def contains(self, values, tol: float = SUBCHAIN_KINK_TOL):
        """Check membership of one object or a batch of them.

        Strict signs need a margin above ``tol``, zeros must stay within
        ``tol``. Leading axes beyond the pattern shape are batch axes.
        """
        values = np.asarray(values, dtype=np.float64)
        axes = tuple(range(values.ndim - self.signs.ndim, values.ndim))
        signed = self.signs != 0.0
        zero = ~signed & ~self.free
        ok_signed = np.where(signed, self.signs * values > tol, True)
        ok_zero = np.where(zero, np.abs(values) <= tol, True)
        return np.all(ok_signed & ok_zero, axis=axes)

    def sample(self, rng: np.random.Generator) -> np.ndarray:
        """Draw a relative-interior member.

        Signed entries have magnitudes in ``[0.1, 1]``, free entries are
        uniform in ``[-1, 1]``.
        """
        low, high = POSITIVE_RANGE
        magnitudes = rng.uniform(low, high, size=self.shape)
        free = rng.uniform(-1.0, 1.0, size=self.shape)
        return np.where(self.free, free, self.signs * magnitudes)

    def to_dict(self) -> dict:
        """Serialize signs with ``null`` for free entries."""
        marked = np.where(self.free, np.nan, self.signs)
        return {
            "shape": list(self.shape),
            "signs": [None if np.isnan(v) else int(v)
                      for v in marked.ravel()],
        }


def orthant_pattern() -> SignPattern:
    """Open orthant of 2×2 images: three positive entries, ``(2,2)`` < 0."""
    return SignPattern([[1.0, 1.0], [1.0, -1.0]], np.zeros((2, 2), bool))


def mf_pattern(n: int) -> SignPattern:
    """Square ``n×n`` target set out of reach of latent dimension ``n-1``.

    The first two rows are free up to column ``n-2``; their last two
    entries are ``(+, +)`` and ``(+, -)``. Row ``i ≥ 3`` is positive in
    column ``i-2`` and zero elsewhere.

    >>> mf_pattern(3).to_dict()["signs"]
    [None, 1, 1, None, 1, -1, 1, 0, 0]
    """
    if n < 2:
        raise DimensionError("the MF pattern needs n >= 2")
    signs = np.zeros((n, n))
    free = np.zeros((n, n), dtype=bool)
    free[:2, :n - 2] = True
    signs[0, n - 2:] = 1.0
    signs[1, n - 2] = 1.0
    signs[1, n - 1] = -1.0
    for i in range(2, n):
        signs[i, i - 2] = 1.0
    return SignPattern(signs, free)


def embedded_mf_pattern(m: int, n: int) -> SignPattern:
    """MF pattern of size ``min(m, n)`` in the top-left block, zeros around."""
    size = min(m, n)
    block = mf_pattern(size)
    signs = np.zeros((m, n))
    free = np.zeros((m, n), dtype=bool)
    signs[:size, :size] = block.signs
    free[:size, :size] = block.free
    return SignPattern(signs, free)


def fm_pattern(a) -> SignPattern:
    """FM pair-vector set out of reach of latent dimension ``d0-2``.

    Pairs ``(1, j)`` are positive for ``j ≤ d0-2`` and carry the sign of
    ``a_1j`` for the last two features; all other pairs are zero.

    >>> fm_pattern([1.0, -1.0, 1.0]).to_dict()["signs"]
    [1, -1, 0]
    """
    a = as_vector(a, "a")
    d0 = features_from_pairs(a.size)
    if d0 < 3:
        raise DimensionError("the FM pattern needs d0 >= 3")
    if np.min(np.abs(a)) <= 0.0:
        raise InvariantError("all coefficients of a must be nonzero")

    indexer = PairIndexer(d0)
    signs = np.zeros(a.size)
    for j in range(2, d0 + 1):
        position = indexer.forward(1, j) - 1
        signs[position] = np.sign(a[position]) if j >= d0 - 1 else 1.0
    return SignPattern(signs, np.zeros(a.size, dtype=bool))


def low_rank_distance(target, d: int) -> float:
    """Frobenius distance of ``target`` to the matrices of rank ``≤ d``."""
    values = scipy.linalg.svdvals(np.asarray(target, dtype=np.float64))
    return float(np.sqrt(np.sum(values[d:] ** 2)))
