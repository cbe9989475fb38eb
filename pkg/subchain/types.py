# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 Graz University of Technology.
#
# subchain is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Dense containers, parameter points and pair indexing.

Matrices and tensors are plain :class:`numpy.ndarray` objects of ``float64``
checked on entry. Parameter points are frozen dataclasses holding read-only
arrays; ``variables`` names the fields a map differentiates with respect
to, in the order they appear in the flat vector of :meth:`Point.pack`.
"""

import dataclasses
from itertools import combinations
from typing import ClassVar, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .errors import InvariantError, ShapeError


def _checked(data, ndim: int, name: str) -> np.ndarray:
    try:
        array = np.array(data, dtype=np.float64)
    except (TypeError, ValueError) as error:
        raise ShapeError(f"{name} is not numeric: {error}") from error

    if array.ndim != ndim:
        raise ShapeError(f"{name} must have {ndim} axes, got {array.ndim}")
    if not np.all(np.isfinite(array)):
        raise InvariantError(f"{name} contains NaN or Inf")
    return array


def as_matrix(data, name: str = "matrix") -> np.ndarray:
    """Get a finite 2-D float array."""
    return _checked(data, 2, name)


def as_vector(data, name: str = "vector") -> np.ndarray:
    """Get a finite 1-D float array."""
    return _checked(data, 1, name)


def as_tensor3(data, name: str = "tensor") -> np.ndarray:
    """Get a finite 3-D float array."""
    return _checked(data, 3, name)


def pair_count(d0: int) -> int:
    """Number of pairs ``(i, j)`` with ``j > i`` among ``d0`` features."""
    return d0 * (d0 - 1) // 2


def triple_count(d0: int) -> int:
    """Number of triples ``(i, j, k)`` with ``k > j > i``."""
    return d0 * (d0 - 1) * (d0 - 2) // 6


def features_from_pairs(length: int) -> int:
    """Invert :func:`pair_count`.

    >>> features_from_pairs(6)
    4
    """
    d0 = int(round((1 + np.sqrt(1 + 8 * length)) / 2))
    if pair_count(d0) != length:
        raise ShapeError(f"{length} is not a pair count d0(d0-1)/2")
    return d0


class PairIndexer(object):
    """Lexicographic bijection between a pair set and ``1..len``.

    Pairs are 1-based ``(i, j)`` with ``j > i``. Without an explicit pair
    set the indexer covers all pairs among ``d0`` features.

    >>> indexer = PairIndexer(3)
    >>> indexer.forward(2, 3)
    3
    >>> indexer.backward(2)
    (1, 3)
    """

    def __init__(self, d0: int, pairs: Optional[Sequence] = None):
        """Build the index tables."""
        if d0 < 0:
            raise ShapeError("d0 must be non-negative")
        if pairs is None:
            pairs = combinations(range(1, d0 + 1), 2)

        ordered = sorted({(int(i), int(j)) for i, j in pairs})
        for i, j in ordered:
            if not 1 <= i < j <= d0:
                raise ShapeError(f"pair ({i}, {j}) invalid for d0={d0}")

        self.d0 = d0
        self.pairs: List[Tuple[int, int]] = ordered
        self._position = {pair: k for k, pair in enumerate(ordered, 1)}
        self.rows = np.array([i - 1 for i, _ in ordered], dtype=np.intp)
        self.cols = np.array([j - 1 for _, j in ordered], dtype=np.intp)

    def __len__(self) -> int:
        """Number of indexed pairs."""
        return len(self.pairs)

    def __iter__(self) -> Iterator[Tuple[int, int]]:
        """Iterate the pairs in lexicographic order."""
        return iter(self.pairs)

    def __contains__(self, pair) -> bool:
        """Check whether a 1-based pair is indexed."""
        return tuple(pair) in self._position

    def forward(self, i: int, j: int) -> int:
        """Get the 1-based flat position of pair ``(i, j)``."""
        try:
            return self._position[(i, j)]
        except KeyError:
            raise ShapeError(f"pair ({i}, {j}) is not indexed") from None

    def backward(self, position: int) -> Tuple[int, int]:
        """Get the pair stored at 1-based flat position ``position``."""
        if not 1 <= position <= len(self.pairs):
            raise ShapeError(f"position {position} out of range")
        return self.pairs[position - 1]


def triple_tables(d0: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Get 0-based index arrays of all triples ``k > j > i``."""
    triples = np.array(list(combinations(range(d0), 3)), dtype=np.intp)
    if triples.size == 0:
        empty = np.zeros(0, dtype=np.intp)
        return empty, empty, empty
    return triples[:, 0], triples[:, 1], triples[:, 2]


def _frozen(array: np.ndarray) -> np.ndarray:
    array = np.array(array, dtype=np.float64)
    array.setflags(write=False)
    return array


def _nonzero_coefficients(a: np.ndarray, name: str = "a"):
    if a.size and np.min(np.abs(a)) <= 0.0:
        raise InvariantError(f"all coefficients of {name} must be nonzero")


@dataclasses.dataclass(frozen=True, eq=False)
class Point:
    """Base of all parameter points."""

    variables: ClassVar[Tuple[str, ...]] = ()
    converters: ClassVar[dict] = {}

    def __post_init__(self):
        """Convert and freeze every array field."""
        for field in dataclasses.fields(self):
            convert = self.converters.get(field.name, as_matrix)
            value = _frozen(convert(getattr(self, field.name), field.name))
            object.__setattr__(self, field.name, value)
        self.validate()

    def validate(self):
        """Check the shape invariants of the point."""

    def pack(self) -> np.ndarray:
        """Flatten the variables into one vector."""
        parts = [np.ravel(getattr(self, name)) for name in self.variables]
        return np.concatenate(parts) if parts else np.zeros(0)

    def unpack(self, vector) -> "Point":
        """Get a point of the same shape with variables from ``vector``."""
        vector = np.asarray(vector, dtype=np.float64)
        if vector.shape != (self.size,):
            raise ShapeError(
                f"expected a vector of length {self.size}, "
                f"got shape {vector.shape}"
            )

        values, offset = {}, 0
        for name in self.variables:
            shape = np.shape(getattr(self, name))
            count = int(np.prod(shape))
            values[name] = vector[offset:offset + count].reshape(shape)
            offset += count
        return dataclasses.replace(self, **values)

    @property
    def size(self) -> int:
        """Length of the packed vector."""
        return sum(np.size(getattr(self, name)) for name in self.variables)

    def distance(self, other: "Point") -> float:
        """Frobenius distance between two points of the same shape."""
        return float(np.linalg.norm(self.pack() - other.pack()))

    def norm(self) -> float:
        """Frobenius norm of the variables."""
        return float(np.linalg.norm(self.pack()))


def _shared_rows(point, names: Sequence[str]):
    rows = {getattr(point, name).shape[0] for name in names}
    if len(rows) != 1:
        raise ShapeError(
            f"{', '.join(names)} must share their first dimension"
        )


@dataclasses.dataclass(frozen=True, eq=False)
class FactorPoint(Point):
    """Argument ``(X, Y)`` of the matrix factorization map."""

    X: np.ndarray
    Y: np.ndarray

    variables: ClassVar[Tuple[str, ...]] = ("X", "Y")

    def validate(self):
        """Check the shared latent dimension."""
        _shared_rows(self, ("X", "Y"))

    @property
    def d(self) -> int:
        """Latent dimension."""
        return self.X.shape[0]

    @property
    def m(self) -> int:
        """Number of rows of the image."""
        return self.X.shape[1]

    @property
    def n(self) -> int:
        """Number of columns of the image."""
        return self.Y.shape[1]


@dataclasses.dataclass(frozen=True, eq=False)
class FMPoint(Point):
    """Factorization machine point ``P`` with pair coefficients ``a``."""

    P: np.ndarray
    a: np.ndarray

    variables: ClassVar[Tuple[str, ...]] = ("P",)
    converters: ClassVar[dict] = {"P": as_matrix, "a": as_vector}

    def validate(self):
        """Check the coefficient count and the nonzero invariant."""
        if self.a.shape[0] != pair_count(self.d0):
            raise ShapeError(
                f"a needs {pair_count(self.d0)} coefficients for "
                f"d0={self.d0}, got {self.a.shape[0]}"
            )
        _nonzero_coefficients(self.a)

    @property
    def d0(self) -> int:
        """Number of features."""
        return self.P.shape[1]

    @property
    def indexer(self) -> PairIndexer:
        """Pair indexer over all feature pairs."""
        return PairIndexer(self.d0)


@dataclasses.dataclass(frozen=True, eq=False)
class HOFMPoint(Point):
    """Higher-order FM point with triple coefficients ``a``."""

    P: np.ndarray
    a: np.ndarray

    variables: ClassVar[Tuple[str, ...]] = ("P",)
    converters: ClassVar[dict] = {"P": as_matrix, "a": as_vector}

    def validate(self):
        """Check the coefficient count and the nonzero invariant."""
        if self.a.shape[0] != triple_count(self.P.shape[1]):
            raise ShapeError("a needs one coefficient per feature triple")
        _nonzero_coefficients(self.a)


@dataclasses.dataclass(frozen=True, eq=False)
class NeuFMPoint(Point):
    """Neural FM point: features ``P``, hidden directions ``H``."""

    P: np.ndarray
    H: np.ndarray
    a: np.ndarray

    variables: ClassVar[Tuple[str, ...]] = ("P", "H")
    converters: ClassVar[dict] = {
        "P": as_matrix, "H": as_matrix, "a": as_vector,
    }

    def validate(self):
        """Check shapes and the nonzero invariant."""
        _shared_rows(self, ("P", "H"))
        if self.a.shape[0] != pair_count(self.P.shape[1]):
            raise ShapeError("a needs one coefficient per feature pair")
        _nonzero_coefficients(self.a)


@dataclasses.dataclass(frozen=True, eq=False)
class CPPoint(Point):
    """Argument ``(X, Y, Z)`` of the CP factorization map."""

    X: np.ndarray
    Y: np.ndarray
    Z: np.ndarray

    variables: ClassVar[Tuple[str, ...]] = ("X", "Y", "Z")

    def validate(self):
        """Check the shared latent dimension."""
        _shared_rows(self, ("X", "Y", "Z"))


@dataclasses.dataclass(frozen=True, eq=False)
class CPDaggerPoint(Point):
    """Argument ``(x, Y, Z)`` of the pseudo-tensor map."""

    x: np.ndarray
    Y: np.ndarray
    Z: np.ndarray

    variables: ClassVar[Tuple[str, ...]] = ("x", "Y", "Z")
    converters: ClassVar[dict] = {
        "x": as_vector, "Y": as_matrix, "Z": as_matrix,
    }

    def validate(self):
        """Check the shared latent dimension."""
        _shared_rows(self, ("x", "Y", "Z"))


@dataclasses.dataclass(frozen=True, eq=False)
class GMFPoint(Point):
    """Argument ``(h, P, Q)`` of the generalized MF inner map."""

    h: np.ndarray
    P: np.ndarray
    Q: np.ndarray

    variables: ClassVar[Tuple[str, ...]] = ("h", "P", "Q")
    converters: ClassVar[dict] = {
        "h": as_vector, "P": as_matrix, "Q": as_matrix,
    }

    def validate(self):
        """Check the shared latent dimension."""
        _shared_rows(self, ("h", "P", "Q"))


@dataclasses.dataclass(frozen=True, eq=False)
class NeuMFPoint(Point):
    """Argument ``(W, X, S, Y, b)`` of the NeuMF map."""

    W: np.ndarray
    X: np.ndarray
    S: np.ndarray
    Y: np.ndarray
    b: np.ndarray

    variables: ClassVar[Tuple[str, ...]] = ("W", "X", "S", "Y", "b")
    converters: ClassVar[dict] = {"b": as_vector}

    def validate(self):
        """Check the shared latent and hidden dimensions."""
        _shared_rows(self, ("W", "X", "S", "Y"))
        hidden = {self.W.shape[1], self.S.shape[1], self.b.shape[0]}
        if len(hidden) != 1:
            raise ShapeError("W, S and b must share the hidden dimension")
