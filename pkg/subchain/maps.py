# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 Graz University of Technology.
#
# subchain is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Factorization maps, their Jacobian operators and submappings.

Every map of the catalog is registered under a short id (``mf``, ``fm``,
``cp``, ``cpdagger``, ``hofm``, ``neufm``, ``neumf``, ``gmf``) and offers
``evaluate``, the directional derivative ``jvp`` and its adjoint ``vjp``.
:func:`jacobian` wraps the latter two in a
:class:`scipy.sparse.linalg.LinearOperator` on packed point vectors.

>>> import numpy as np
>>> from subchain.types import FactorPoint
>>> eval_mf(FactorPoint(np.eye(2), [[2.0, 0.0], [0.0, 3.0]]))
array([[2., 0.],
       [0., 3.]])
"""

import logging
from typing import Dict, Sequence

import numpy as np
from scipy.sparse.linalg import LinearOperator

from .config import SUBCHAIN_FD_STEP, SUBCHAIN_MATERIALIZE_LIMIT
from .errors import ShapeError, UnknownMapError
from .types import (CPDaggerPoint, CPPoint, FactorPoint, FMPoint, GMFPoint,
                    HOFMPoint, NeuFMPoint, NeuMFPoint, PairIndexer, Point,
                    as_vector, pair_count, triple_count, triple_tables)

logger = logging.getLogger(__name__)


def _coefficients(rng: np.random.Generator, count: int) -> np.ndarray:
    """Draw nonzero coefficients with magnitudes in ``[0.5, 2]``."""
    signs = rng.choice([-1.0, 1.0], size=count)
    return signs * rng.uniform(0.5, 2.0, size=count)


class FactorizationMap(object):
    """Base class of the catalogued maps."""

    map_id = ""
    point_type = Point
    dims = ()

    def evaluate(self, point) -> np.ndarray:
        """Evaluate the map."""
        raise NotImplementedError

    def jvp(self, point, tangent) -> np.ndarray:
        """Directional derivative at ``point`` along ``tangent``."""
        raise NotImplementedError

    def vjp(self, point, cotangent) -> np.ndarray:
        """Adjoint of the derivative, as a packed vector."""
        raise NotImplementedError

    def random_point(self, rng: np.random.Generator, **dims):
        """Draw a standard normal point of the given dimensions."""
        raise NotImplementedError

    def check(self, point):
        """Ensure ``point`` is a point of this map."""
        if not isinstance(point, self.point_type):
            raise ShapeError(
                f"map '{self.map_id}' takes a {self.point_type.__name__}, "
                f"got {type(point).__name__}"
            )
        return point


class MFMap(FactorizationMap):
    """Matrix factorization ``(X, Y) -> XᵀY``."""

    map_id = "mf"
    point_type = FactorPoint
    dims = ("d", "m", "n")

    def evaluate(self, point):
        """Get ``XᵀY``."""
        return point.X.T @ point.Y

    def jvp(self, point, tangent):
        """Get ``ΔXᵀY + XᵀΔY``."""
        return tangent.X.T @ point.Y + point.X.T @ tangent.Y

    def vjp(self, point, cotangent):
        """Get ``(YWᵀ, XW)`` packed."""
        return np.concatenate([
            (point.Y @ cotangent.T).ravel(),
            (point.X @ cotangent).ravel(),
        ])

    def random_point(self, rng, d=2, m=2, n=2):
        """Draw a random factor point."""
        return FactorPoint(rng.standard_normal((d, m)),
                           rng.standard_normal((d, n)))


class FMMap(FactorizationMap):
    """Homogeneous factorization machine over all feature pairs."""

    map_id = "fm"
    point_type = FMPoint
    dims = ("d", "d0")

    def evaluate(self, point):
        """Get ``a_ij p_iᵀp_j`` in pair order."""
        indexer = point.indexer
        gram = point.P.T @ point.P
        return point.a * gram[indexer.rows, indexer.cols]

    def jvp(self, point, tangent):
        """Differentiate the Gram entries."""
        indexer = point.indexer
        cross = tangent.P.T @ point.P
        return point.a * (cross + cross.T)[indexer.rows, indexer.cols]

    def vjp(self, point, cotangent):
        """Get ``P(C + Cᵀ)`` with ``C_ij = a_ij w_ij``."""
        indexer = point.indexer
        weights = np.zeros((point.d0, point.d0))
        weights[indexer.rows, indexer.cols] = point.a * cotangent
        return (point.P @ (weights + weights.T)).ravel()

    def random_point(self, rng, d=2, d0=3):
        """Draw a random FM point with coefficients of magnitude ≥ 0.5."""
        return FMPoint(rng.standard_normal((d, d0)),
                       _coefficients(rng, pair_count(d0)))


class CPMap(FactorizationMap):
    """Third-order CP factorization ``⟦X, Y, Z⟧``."""

    map_id = "cp"
    point_type = CPPoint
    dims = ("d", "n1", "n2", "n3")

    def evaluate(self, point):
        """Get entries ``Σ_s X_si Y_sj Z_sk``."""
        return np.einsum("si,sj,sk->ijk", point.X, point.Y, point.Z)

    def jvp(self, point, tangent):
        """Apply the product rule to the three factors."""
        return (
            np.einsum("si,sj,sk->ijk", tangent.X, point.Y, point.Z)
            + np.einsum("si,sj,sk->ijk", point.X, tangent.Y, point.Z)
            + np.einsum("si,sj,sk->ijk", point.X, point.Y, tangent.Z)
        )

    def vjp(self, point, cotangent):
        """Contract the cotangent with two factors at a time."""
        X, Y, Z = point.X, point.Y, point.Z
        return np.concatenate([
            np.einsum("ijk,sj,sk->si", cotangent, Y, Z).ravel(),
            np.einsum("ijk,si,sk->sj", cotangent, X, Z).ravel(),
            np.einsum("ijk,si,sj->sk", cotangent, X, Y).ravel(),
        ])

    def random_point(self, rng, d=2, n1=2, n2=2, n3=2):
        """Draw a random CP point."""
        return CPPoint(rng.standard_normal((d, n1)),
                       rng.standard_normal((d, n2)),
                       rng.standard_normal((d, n3)))


class CPDaggerMap(FactorizationMap):
    """Pseudo-tensor map ``(x, Y, Z) -> Yᵀdiag(x)Z``."""

    map_id = "cpdagger"
    point_type = CPDaggerPoint
    dims = ("d", "n2", "n3")

    @staticmethod
    def _fields(point):
        return point.x, point.Y, point.Z

    @staticmethod
    def _build(x, Y, Z):
        return CPDaggerPoint(x, Y, Z)

    def evaluate(self, point):
        """Get ``Yᵀdiag(x)Z``."""
        x, Y, Z = self._fields(point)
        return (Y * x[:, None]).T @ Z

    def jvp(self, point, tangent):
        """Apply the product rule to the three factors."""
        x, Y, Z = self._fields(point)
        dx, dY, dZ = self._fields(tangent)
        return (
            (Y * dx[:, None]).T @ Z
            + (dY * x[:, None]).T @ Z
            + (Y * x[:, None]).T @ dZ
        )

    def vjp(self, point, cotangent):
        """Get ``(diag(YWZᵀ), diag(x)ZWᵀ, diag(x)YW)`` packed."""
        x, Y, Z = self._fields(point)
        return np.concatenate([
            np.einsum("sj,jk,sk->s", Y, cotangent, Z),
            (x[:, None] * (Z @ cotangent.T)).ravel(),
            (x[:, None] * (Y @ cotangent)).ravel(),
        ])

    def random_point(self, rng, d=2, n2=2, n3=2):
        """Draw a random pseudo-tensor point."""
        return self._build(rng.standard_normal(d),
                           rng.standard_normal((d, n2)),
                           rng.standard_normal((d, n3)))


class GMFMap(CPDaggerMap):
    """Inner map ``(h, P, Q) -> Pᵀdiag(h)Q`` of generalized MF."""

    map_id = "gmf"
    point_type = GMFPoint
    dims = ("d", "m", "n")

    @staticmethod
    def _fields(point):
        return point.h, point.P, point.Q

    @staticmethod
    def _build(h, P, Q):
        return GMFPoint(h, P, Q)

    def random_point(self, rng, d=2, m=2, n=2):
        """Draw a random GMF point."""
        return super().random_point(rng, d=d, n2=m, n3=n)


class HOFMMap(FactorizationMap):
    """Third-order FM over all feature triples."""

    map_id = "hofm"
    point_type = HOFMPoint
    dims = ("d", "d0")

    def evaluate(self, point):
        """Get ``a_ijk ⟨p_i, p_j, p_k⟩`` in triple order."""
        i, j, k = triple_tables(point.P.shape[1])
        P = point.P
        return point.a * np.sum(P[:, i] * P[:, j] * P[:, k], axis=0)

    def jvp(self, point, tangent):
        """Apply the product rule per triple."""
        i, j, k = triple_tables(point.P.shape[1])
        P, dP = point.P, tangent.P
        return point.a * np.sum(
            dP[:, i] * P[:, j] * P[:, k]
            + P[:, i] * dP[:, j] * P[:, k]
            + P[:, i] * P[:, j] * dP[:, k],
            axis=0,
        )

    def vjp(self, point, cotangent):
        """Scatter the weighted products back onto the columns."""
        i, j, k = triple_tables(point.P.shape[1])
        P = point.P
        weights = point.a * cotangent
        gradient = np.zeros_like(P)
        np.add.at(gradient, (slice(None), i), weights * P[:, j] * P[:, k])
        np.add.at(gradient, (slice(None), j), weights * P[:, i] * P[:, k])
        np.add.at(gradient, (slice(None), k), weights * P[:, i] * P[:, j])
        return gradient.ravel()

    def random_point(self, rng, d=2, d0=3):
        """Draw a random HOFM point."""
        return HOFMPoint(rng.standard_normal((d, d0)),
                         _coefficients(rng, triple_count(d0)))


class NeuFMMap(FactorizationMap):
    """Neural FM: ``a_ij ⟨h_s, p_i, p_j⟩`` indexed by ``(s, pair)``."""

    map_id = "neufm"
    point_type = NeuFMPoint
    dims = ("d", "d0", "h")

    def evaluate(self, point):
        """Get the ``h × pairs`` output matrix."""
        indexer = PairIndexer(point.P.shape[1])
        products = point.P[:, indexer.rows] * point.P[:, indexer.cols]
        return (point.H.T @ products) * point.a

    def jvp(self, point, tangent):
        """Apply the product rule to ``H`` and both feature columns."""
        indexer = PairIndexer(point.P.shape[1])
        rows, cols = indexer.rows, indexer.cols
        P, dP = point.P, tangent.P
        products = P[:, rows] * P[:, cols]
        d_products = dP[:, rows] * P[:, cols] + P[:, rows] * dP[:, cols]
        return (tangent.H.T @ products + point.H.T @ d_products) * point.a

    def vjp(self, point, cotangent):
        """Get the ``(P, H)`` gradient blocks packed."""
        indexer = PairIndexer(point.P.shape[1])
        rows, cols = indexer.rows, indexer.cols
        P = point.P
        weighted = cotangent * point.a
        products = P[:, rows] * P[:, cols]
        mixed = point.H @ weighted
        gradient = np.zeros_like(P)
        np.add.at(gradient, (slice(None), rows), mixed * P[:, cols])
        np.add.at(gradient, (slice(None), cols), mixed * P[:, rows])
        return np.concatenate([
            gradient.ravel(), (products @ weighted.T).ravel(),
        ])

    def random_point(self, rng, d=2, d0=3, h=2):
        """Draw a random NeuFM point."""
        return NeuFMPoint(rng.standard_normal((d, d0)),
                          rng.standard_normal((d, h)),
                          _coefficients(rng, pair_count(d0)))


class NeuMFMap(FactorizationMap):
    """NeuMF: ``w_kᵀx_i + s_kᵀy_j + b_k`` indexed by ``(i, j, k)``."""

    map_id = "neumf"
    point_type = NeuMFPoint
    dims = ("d", "m", "n", "h")

    def evaluate(self, point):
        """Get the ``m × n × h`` output tensor."""
        left = point.X.T @ point.W
        right = point.Y.T @ point.S
        return left[:, None, :] + right[None, :, :] + point.b

    def jvp(self, point, tangent):
        """Differentiate both bilinear terms and the bias."""
        left = tangent.X.T @ point.W + point.X.T @ tangent.W
        right = tangent.Y.T @ point.S + point.Y.T @ tangent.S
        return left[:, None, :] + right[None, :, :] + tangent.b

    def vjp(self, point, cotangent):
        """Reduce the cotangent over each free mode."""
        rows = cotangent.sum(axis=1)
        cols = cotangent.sum(axis=0)
        return np.concatenate([
            (point.X @ rows).ravel(),
            (point.W @ rows.T).ravel(),
            (point.Y @ cols).ravel(),
            (point.S @ cols.T).ravel(),
            cotangent.sum(axis=(0, 1)),
        ])

    def random_point(self, rng, d=2, m=3, n=3, h=2):
        """Draw a random NeuMF point."""
        return NeuMFPoint(rng.standard_normal((d, h)),
                          rng.standard_normal((d, m)),
                          rng.standard_normal((d, h)),
                          rng.standard_normal((d, n)),
                          rng.standard_normal(h))


MAPS: Dict[str, FactorizationMap] = {
    catalogued.map_id: catalogued
    for catalogued in (MFMap(), FMMap(), CPMap(), CPDaggerMap(),
                       HOFMMap(), NeuFMMap(), NeuMFMap(), GMFMap())
}


def get_map(map_id: str) -> FactorizationMap:
    """Look up a catalogued map."""
    try:
        return MAPS[map_id]
    except KeyError:
        raise UnknownMapError(
            f"unknown map '{map_id}', expected one of {sorted(MAPS)}"
        ) from None


def evaluate(map_id: str, point) -> np.ndarray:
    """Evaluate the map ``map_id`` at ``point``."""
    catalogued = get_map(map_id)
    return catalogued.evaluate(catalogued.check(point))


def eval_mf(point: FactorPoint) -> np.ndarray:
    """Evaluate ``XᵀY``."""
    return evaluate("mf", point)


def eval_fm(point: FMPoint) -> np.ndarray:
    """Evaluate the FM pair vector in lexicographic pair order.

    >>> import numpy as np
    >>> from subchain.types import FMPoint
    >>> eval_fm(FMPoint(np.eye(3), np.ones(3)))
    array([0., 0., 0.])
    """
    return evaluate("fm", point)


def eval_cp(point: CPPoint) -> np.ndarray:
    """Evaluate ``⟦X, Y, Z⟧``."""
    return evaluate("cp", point)


def eval_cp_dagger(x, Y, Z) -> np.ndarray:
    """Evaluate ``Yᵀdiag(x)Z``."""
    return evaluate("cpdagger", CPDaggerPoint(x, Y, Z))


def eval_hofm(point: HOFMPoint) -> np.ndarray:
    """Evaluate the third-order FM triple vector."""
    return evaluate("hofm", point)


def eval_neufm(P, H, a) -> np.ndarray:
    """Evaluate the neural FM output, rows indexed by hidden direction."""
    return evaluate("neufm", NeuFMPoint(P, H, a))


def eval_neumf(W, X, S, Y, b) -> np.ndarray:
    """Evaluate the NeuMF output tensor."""
    return evaluate("neumf", NeuMFPoint(W, X, S, Y, b))


def eval_gmf(h, P, Q) -> np.ndarray:
    """Evaluate ``Pᵀdiag(h)Q``."""
    return evaluate("gmf", GMFPoint(h, P, Q))


def eval_mf_sub(point: FactorPoint, pairs: Sequence) -> np.ndarray:
    """Evaluate ``x_iᵀy_j`` over 1-based index pairs ``(i, j)``."""
    pairs = np.asarray(list(pairs), dtype=np.intp).reshape(-1, 2)
    if pairs.size and (
        pairs[:, 0].min() < 1 or pairs[:, 0].max() > point.m
        or pairs[:, 1].min() < 1 or pairs[:, 1].max() > point.n
    ):
        raise ShapeError("submapping index out of range")
    rows, cols = pairs[:, 0] - 1, pairs[:, 1] - 1
    return np.sum(point.X[:, rows] * point.Y[:, cols], axis=0)


def eval_fm_sub(P, coefficients, indexer: PairIndexer) -> np.ndarray:
    """Evaluate ``a_ij p_iᵀp_j`` over the pairs of ``indexer``.

    ``coefficients`` are given in the indexer's order; unlike a full
    :class:`FMPoint` the pair set may be any subset.
    """
    coefficients = as_vector(coefficients, "a")
    if coefficients.shape[0] != len(indexer):
        raise ShapeError("one coefficient per indexed pair required")
    if np.shape(P)[1] != indexer.d0:
        raise ShapeError("P must have one column per feature")
    P = np.asarray(P, dtype=np.float64)
    products = P[:, indexer.rows] * P[:, indexer.cols]
    return coefficients * products.sum(axis=0)


def jacobian(map_id: str, point) -> LinearOperator:
    """Get the Jacobian of ``map_id`` at ``point`` as a linear operator.

    The operator acts on packed point vectors and returns flattened
    (row-major) outputs.
    """
    catalogued = get_map(map_id)
    catalogued.check(point)
    out_shape = catalogued.evaluate(point).shape
    out_size = int(np.prod(out_shape))

    def matvec(vector):
        tangent = point.unpack(np.ravel(vector))
        return catalogued.jvp(point, tangent).ravel()

    def rmatvec(vector):
        cotangent = np.reshape(vector, out_shape)
        return catalogued.vjp(point, cotangent)

    return LinearOperator(
        (out_size, point.size),
        matvec=matvec,
        rmatvec=rmatvec,
        dtype=np.float64,
    )


def materialize(
    operator: LinearOperator, limit: int = SUBCHAIN_MATERIALIZE_LIMIT
) -> np.ndarray:
    """Get the dense matrix of a Jacobian operator.

    Raises :class:`ShapeError` above ``limit`` entries.
    """
    rows, cols = operator.shape
    if rows * cols > limit:
        raise ShapeError(
            f"refusing to materialize {rows}x{cols} > {limit} entries"
        )
    if cols <= rows:
        return operator.matmat(np.eye(cols))
    return operator.rmatmat(np.eye(rows)).T


def check_jacobian(
    map_id: str, point, direction, step: float = SUBCHAIN_FD_STEP
) -> float:
    """Compare the Jacobian with a central difference along ``direction``.

    Returns the largest absolute deviation.
    """
    catalogued = get_map(map_id)
    direction = np.asarray(direction, dtype=np.float64)
    base = point.pack()
    forward = catalogued.evaluate(point.unpack(base + step * direction))
    backward = catalogued.evaluate(point.unpack(base - step * direction))
    estimate = (forward - backward) / (2 * step)
    exact = jacobian(map_id, point).matvec(direction)
    error = float(np.max(np.abs(exact - estimate.ravel()), initial=0.0))
    logger.debug("jacobian check %s: max deviation %.3e", map_id, error)
    return error


def check_adjoint(map_id: str, point, vector, cotangent) -> float:
    """Get the relative gap ``|⟨Jv, w⟩ - ⟨v, Jᵀw⟩|``."""
    operator = jacobian(map_id, point)
    left = float(np.dot(operator.matvec(vector), np.ravel(cotangent)))
    right = float(np.dot(vector, operator.rmatvec(np.ravel(cotangent))))
    return abs(left - right) / max(1.0, abs(left), abs(right))
