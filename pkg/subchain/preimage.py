# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 Graz University of Technology.
#
# subchain is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Constructive preimage solvers.

Each solver takes a base point, a trust radius ``t`` and a target and
returns a point within distance ``t`` of the base whose image is the
target. Targets inside the certified radius of the construction are
``guaranteed``; ``strict`` mode refuses every other target while
``best-effort`` mode runs the same construction and reports the outcome.
"""

import dataclasses
import logging
from typing import Tuple

import numpy as np

from .config import SUBCHAIN_RADIUS_SLACK, SUBCHAIN_RESIDUAL_RTOL
from .errors import (AdmissibilityError, DimensionError, InvariantError,
                     ShapeError)
from .linalg import complement_basis, numerical_rank, span_dimension
from .maps import eval_cp, eval_cp_dagger, eval_fm, eval_mf
from .types import (CPDaggerPoint, CPPoint, FactorPoint, FMPoint, Point,
                    as_matrix, as_tensor3, as_vector, features_from_pairs)

logger = logging.getLogger(__name__)

STRICT = "strict"
BEST_EFFORT = "best-effort"
MODES = (STRICT, BEST_EFFORT)


@dataclasses.dataclass(frozen=True, eq=False)
class PreimageSolution:
    """Outcome of a preimage construction."""

    point: Point
    residual: float
    perturbation_norm: float
    t: float
    guaranteed: bool
    certified_radius: float
    target_norm: float = 0.0

    @property
    def solved(self) -> bool:
        """Check the residual against the default success tolerance."""
        return self.within(SUBCHAIN_RESIDUAL_RTOL)

    def within(self, rtol: float) -> bool:
        """Check ``residual ≤ rtol·(1 + ‖target‖)``."""
        return self.residual <= rtol * (1 + self.target_norm)


def mf_origin_radius(t: float, m: int, n: int) -> float:
    """Certified radius ``t²/√(4mn)`` of the origin construction.

    >>> mf_origin_radius(2.0, 1, 1)
    2.0
    """
    return float(t ** 2 / np.sqrt(4 * m * n))


def mf_at_epsilon(t: float, m: int, n: int) -> float:
    """Column budget ``min(t/√(2m), t/√(2n))`` of the general point step."""
    return float(t / np.sqrt(2 * max(m, n)))


def fm_rho(a) -> float:
    """Tower admissibility box ``min|a_ij| / 2^(d0-1)``."""
    a = np.asarray(a, dtype=np.float64)
    if a.size == 0:
        return np.inf
    d0 = features_from_pairs(a.size)
    return float(np.min(np.abs(a))) / 2 ** (d0 - 1)


def _check_radius(t: float):
    if not np.isfinite(t) or t <= 0:
        raise InvariantError(f"trust radius must be positive, got {t}")


def _check_mode(mode: str):
    if mode not in MODES:
        raise InvariantError(f"mode must be one of {MODES}, got '{mode}'")


def _admit(
    distance: float, radius: float, mode: str, what: str,
    slack: float = SUBCHAIN_RADIUS_SLACK,
) -> bool:
    """Decide whether a target is inside the slackened certified radius."""
    _check_mode(mode)
    guaranteed = distance <= radius * (1 + slack)
    if not guaranteed:
        if mode == STRICT:
            raise AdmissibilityError(
                f"{what}: target distance {distance:.6g} exceeds the "
                f"certified radius {radius:.6g}"
            )
        logger.debug(
            "%s: target outside certified radius %.3g, best effort",
            what, radius,
        )
    return guaranteed


def _solution(point, base_vector, image, target, t, guaranteed, radius):
    residual = float(np.linalg.norm(image - target))
    perturbation = float(np.linalg.norm(point.pack() - base_vector))
    scale = float(np.linalg.norm(target))
    if residual > SUBCHAIN_RESIDUAL_RTOL * (1 + scale):
        logger.warning("preimage residual %.3e above tolerance", residual)
    return PreimageSolution(
        point=point,
        residual=residual,
        perturbation_norm=perturbation,
        t=float(t),
        guaranteed=bool(guaranteed),
        certified_radius=float(radius),
        target_norm=scale,
    )


def _origin_factors(
    target: np.ndarray, t: float, d: int
) -> Tuple[np.ndarray, np.ndarray]:
    """Factor ``target`` as ``XᵀY`` with unit-vector columns on one side."""
    m, n = target.shape
    if m < n:
        Y, X = _origin_factors(target.T, t, d)
        return X, Y

    X = np.zeros((d, m))
    Y = np.zeros((d, n))
    scale = t / np.sqrt(2 * n)
    Y[:n, :n] = scale * np.eye(n)
    X[:n, :] = target.T / scale
    return X, Y


def solve_mf_origin(
    target, t: float, d: int, mode: str = STRICT,
    slack: float = SUBCHAIN_RADIUS_SLACK,
) -> PreimageSolution:
    """Find ``(X, Y)`` near the origin with ``XᵀY = target``.

    >>> solution = solve_mf_origin([[2.0]], 2.0, 1)
    >>> solution.point.X, solution.point.Y
    (array([[1.41421356]]), array([[1.41421356]]))
    """
    target = as_matrix(target, "target")
    _check_radius(t)
    m, n = target.shape
    if d < min(m, n):
        raise DimensionError(
            f"latent dimension {d} below min(m, n) = {min(m, n)}"
        )

    radius = mf_origin_radius(t, m, n)
    distance = float(np.linalg.norm(target))
    guaranteed = _admit(distance, radius, mode, "mf origin", slack)

    if distance == 0.0:
        X, Y = np.zeros((d, m)), np.zeros((d, n))
    else:
        X, Y = _origin_factors(target, t, d)

    point = FactorPoint(X, Y)
    return _solution(point, np.zeros(point.size), eval_mf(point), target,
                     t, guaranteed, radius)


def _mf_at(
    base: FactorPoint, target, t: float, mode: str,
    slack: float = SUBCHAIN_RADIUS_SLACK,
):
    """Run the general-point construction on a factor point."""
    d, m, n = base.d, base.m, base.n
    complement = complement_basis([base.X, base.Y], d)
    if complement.dim < min(m, n):
        raise DimensionError(
            f"latent dimension {d} below dim(span) + min(m, n) = "
            f"{complement.span_rank + min(m, n)}"
        )

    delta = target - eval_mf(base)
    epsilon = mf_at_epsilon(t, m, n)
    radius = epsilon ** 2
    guaranteed = _admit(float(np.linalg.norm(delta)), radius, mode,
                        "mf at", slack)

    if not np.any(delta):
        return base, guaranteed, radius

    k = complement.dim
    A, B = np.zeros((k, m)), np.zeros((k, n))
    scaled = delta / radius
    if m >= n:
        B[:n, :n] = np.eye(n)
        A[:n, :] = scaled.T
    else:
        A[:m, :m] = np.eye(m)
        B[:m, :] = scaled

    point = FactorPoint(base.X + epsilon * complement.embed(A),
                        base.Y + epsilon * complement.embed(B))
    return point, guaranteed, radius


def solve_mf_at(
    base: FactorPoint, target, t: float, mode: str = STRICT,
    slack: float = SUBCHAIN_RADIUS_SLACK,
) -> PreimageSolution:
    """Find a point in the ``t``-ball around ``base`` mapping to ``target``.

    Perturbation columns live in the orthogonal complement of every base
    column, so the cross terms of the product vanish.
    """
    target = as_matrix(target, "target")
    _check_radius(t)
    if target.shape != (base.m, base.n):
        raise ShapeError(
            f"target shape {target.shape} does not match "
            f"({base.m}, {base.n})"
        )

    point, guaranteed, radius = _mf_at(base, target, t, mode, slack)
    return _solution(point, base.pack(), eval_mf(point), target, t,
                     guaranteed, radius)


def solve_fm_tower(
    a, y_target, dim_free: int, mode: str = STRICT,
    slack: float = SUBCHAIN_RADIUS_SLACK,
) -> np.ndarray:
    """Build ``W*`` with ``a_ij w_iᵀw_j = y_ij`` for all pairs ``j > i``.

    Column ``i`` is supported on its first ``min(i, d0-1)`` rows; row
    ``k`` stays inside ``±1/√2^(d0-k)`` for targets in the tower box.

    >>> solve_fm_tower([1.0], [0.5], 1)
    array([[0.70710678, 0.70710678]])
    """
    a = as_vector(a, "a")
    y_target = as_vector(y_target, "y_target")
    d0 = features_from_pairs(a.size)
    if y_target.shape != a.shape:
        raise ShapeError("one target value per feature pair required")
    if a.size and np.min(np.abs(a)) <= 0.0:
        raise InvariantError("all coefficients of a must be nonzero")
    if dim_free < d0 - 1:
        raise DimensionError(
            f"free dimension {dim_free} below d0 - 1 = {d0 - 1}"
        )

    distance = float(np.max(np.abs(y_target), initial=0.0))
    _admit(distance, fm_rho(a), mode, "fm tower", slack)

    rows, cols = np.triu_indices(d0, k=1)
    ratios = np.zeros((d0, d0))
    ratios[rows, cols] = y_target / a

    tower = np.zeros((max(dim_free, 0), d0))
    for i in range(d0 - 1):
        tower[i, i] = 1.0 / np.sqrt(2.0) ** (d0 - 1 - i)
        for j in range(i + 1, d0):
            known = tower[:i, i] @ tower[:i, j]
            tower[i, j] = (ratios[i, j] - known) / tower[i, i]
    return tower


def tower_bounds(d0: int) -> np.ndarray:
    """Row bounds ``1/√2^(d0-k)`` of the tower box, zero past ``d0-1``."""
    bounds = np.zeros(d0)
    k = np.arange(1, d0)
    bounds[:d0 - 1] = 1.0 / np.sqrt(2.0) ** (d0 - k)
    return bounds


def solve_fm_at(
    base: FMPoint, y_target, t: float, mode: str = STRICT,
    slack: float = SUBCHAIN_RADIUS_SLACK,
) -> PreimageSolution:
    """Find ``P`` near ``base.P`` with FM pair vector ``y_target``."""
    y_target = as_vector(y_target, "y_target")
    _check_radius(t)
    if y_target.shape != base.a.shape:
        raise ShapeError("one target value per feature pair required")

    d, d0 = base.P.shape
    complement = complement_basis([base.P], d)
    if complement.dim < d0 - 1:
        raise DimensionError(
            f"latent dimension {d} below dim(span) + d0 - 1 = "
            f"{complement.span_rank + d0 - 1}"
        )

    delta = y_target - eval_fm(base)
    epsilon = t / np.sqrt(2 * d0)
    radius = epsilon ** 2 * fm_rho(base.a)
    distance = float(np.max(np.abs(delta), initial=0.0))
    guaranteed = _admit(distance, radius, mode, "fm at", slack)

    if not np.any(delta):
        point = base
    else:
        tower = solve_fm_tower(base.a, delta / epsilon ** 2,
                               complement.dim, mode=BEST_EFFORT)
        point = FMPoint(base.P + epsilon * complement.embed(tower), base.a)
    return _solution(point, base.pack(), eval_fm(point), y_target, t,
                     guaranteed, radius)


def cp_origin_radius(t: float, shape) -> float:
    """Certified sup-slice radius of the CP origin construction."""
    if tuple(shape) == (1, 1, 1):
        return (t / np.sqrt(3)) ** 3
    outer, largest, inner = _cp_roles(shape)
    n_outer, n_largest, n_inner = (shape[outer], shape[largest],
                                   shape[inner])
    slice_t = t * np.sqrt(2.0 / (3 * n_outer))
    return (mf_origin_radius(slice_t, n_largest, n_inner)
            * t / np.sqrt(3 * n_outer * n_inner))


def _cp_roles(shape) -> Tuple[int, int, int]:
    """Get ``(outer, largest, inner)`` mode indices."""
    largest = int(np.argmax(shape))
    outer, inner = [mode for mode in range(3) if mode != largest]
    return outer, largest, inner


def solve_cp_origin(
    target, t: float, d: int, mode: str = STRICT,
    slack: float = SUBCHAIN_RADIUS_SLACK,
) -> PreimageSolution:
    """Find CP factors near the origin with ``⟦X, Y, Z⟧ = target``.

    The largest mode is excluded from the minimizing product. The factor
    of the outer mode is block-constant, one block of ``n_inner`` rows per
    outer index, and every outer slice is solved as an independent
    origin problem on its own block.
    """
    target = as_tensor3(target, "target")
    _check_radius(t)
    shape = target.shape
    needed = min(shape[1] * shape[2], shape[0] * shape[2],
                 shape[0] * shape[1])
    if d < needed:
        raise DimensionError(
            f"latent dimension {d} below the minimal mode product {needed}"
        )

    radius = cp_origin_radius(t, shape)
    factors = [np.zeros((d, size)) for size in shape]

    if shape == (1, 1, 1):
        value = float(target[0, 0, 0])
        guaranteed = _admit(abs(value), radius, mode, "cp origin",
                            slack)
        root = np.cbrt(abs(value))
        factors[0][0, 0] = np.sign(value) * root
        factors[1][0, 0] = root
        factors[2][0, 0] = root
    else:
        outer, largest, inner = _cp_roles(shape)
        slices = np.transpose(target, (outer, largest, inner))
        n_outer, _, n_inner = slices.shape
        distance = max(
            float(np.linalg.norm(part)) for part in slices
        )
        guaranteed = _admit(distance, radius, mode, "cp origin", slack)

        block_value = t / np.sqrt(3 * n_outer * n_inner)
        slice_t = t * np.sqrt(2.0 / (3 * n_outer))
        for index, part in enumerate(slices):
            block = slice(index * n_inner, (index + 1) * n_inner)
            factors[outer][block, index] = block_value
            if np.any(part):
                left, right = _origin_factors(part / block_value,
                                              slice_t, n_inner)
                factors[largest][block, :] = left
                factors[inner][block, :] = right

    point = CPPoint(*factors)
    logger.debug("cp origin: certified radius %.3g", radius)
    return _solution(point, np.zeros(point.size), eval_cp(point), target,
                     t, guaranteed, radius)


def solve_cp_dagger_at(
    base: CPDaggerPoint, target, t: float, mode: str = STRICT,
    slack: float = SUBCHAIN_RADIUS_SLACK,
) -> PreimageSolution:
    """Find ``(x, Y, Z)`` near ``base`` with ``Yᵀdiag(x)Z = target``.

    Zero entries of ``x`` are first moved off zero with at most half the
    budget. The factorization ``x = sign(x)·√|x|·√|x|`` then turns the
    problem into a general-point MF problem on rescaled factors.
    """
    target = as_matrix(target, "target")
    _check_radius(t)
    x, Y, Z = base.x, base.Y, base.Z
    d, n2, n3 = Y.shape[0], Y.shape[1], Z.shape[1]
    if target.shape != (n2, n3):
        raise ShapeError(
            f"target shape {target.shape} does not match ({n2}, {n3})"
        )
    if d < n2 + n3 + min(n2, n3):
        raise DimensionError(
            f"latent dimension {d} below n2 + n3 + min(n2, n3) = "
            f"{n2 + n3 + min(n2, n3)}"
        )

    if not np.any(target - eval_cp_dagger(x, Y, Z)):
        radius = float(np.min(np.abs(x))) * mf_at_epsilon(t, n2, n3) ** 2
        return _solution(base, base.pack(), target, target, t, True, radius)

    zeros = x == 0.0
    shifted = x.copy()
    spent = 0.0
    if np.any(zeros):
        count = int(np.sum(zeros))
        smallest = np.min(np.abs(x[~zeros]), initial=np.inf)
        step = min(t / 2, smallest / 2) / np.sqrt(count)
        shifted[zeros] = step
        spent = step * np.sqrt(count)
        logger.debug("cp dagger: moved %d zero entries by %.3g", count, step)

    roots = np.sqrt(np.abs(shifted))
    signs = np.sign(shifted)
    kappa = float(np.min(roots))
    inner_t = kappa * (t - spent)
    scaled = FactorPoint(roots[:, None] * Y,
                         (signs * roots)[:, None] * Z)
    moved, guaranteed, radius = _mf_at(scaled, target, inner_t, mode,
                                       slack)

    point = CPDaggerPoint(
        shifted,
        Y + (moved.X - scaled.X) / roots[:, None],
        Z + (moved.Y - scaled.Y) / (signs * roots)[:, None],
    )
    return _solution(point, base.pack(),
                     eval_cp_dagger(point.x, point.Y, point.Z), target, t,
                     guaranteed, radius)


def dim_condition_mf(base: FactorPoint) -> bool:
    """Check ``d ≥ dim span(X, Y) + min(m, n)``."""
    span = span_dimension([base.X, base.Y], base.d)
    return base.d >= span + min(base.m, base.n)


def rank_condition(base: FactorPoint) -> bool:
    """Check ``rank(X) = rank(Y) = rank(XᵀY)``."""
    ranks = {
        numerical_rank(base.X),
        numerical_rank(base.Y),
        numerical_rank(eval_mf(base)),
    }
    return len(ranks) == 1
