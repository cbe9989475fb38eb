# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 Graz University of Technology.
#
# subchain is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Clarke subdifferential oracles and gradient sampling.

Upper sets come from the chain rule ``Jᵀ ∂ℓ(H(x))`` and are exact
zonotopes for separable losses. Lower sets are estimated by sampling
gradients at differentiable points near ``x``; support functions compare
the two.
"""

import dataclasses
import logging
import warnings
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from .config import (SUBCHAIN_INCLUSION_TOL, SUBCHAIN_KINK_TOL,
                     SUBCHAIN_MAX_KINK_RATE, SUBCHAIN_SEED, SUBCHAIN_ZERO_TOL)
from .errors import (CertificationWarning, DegenerateSamplingError, ShapeError,
                     UnsupportedLossError)
from .fmdata import QualifiedDataset
from .losses import CompositeLoss, ScalarLoss, SeparableLoss
from .maps import get_map, jacobian
from .workers import index_streams, named_stream, parallel_map
from .zonotope import SubgradientZonotope

logger = logging.getLogger(__name__)

SAMPLING_ATTEMPTS = 10


def _outer(loss_spec) -> CompositeLoss:
    """Normalize a loss specification to a composite loss."""
    if isinstance(loss_spec, CompositeLoss):
        return loss_spec
    if isinstance(loss_spec, ScalarLoss):
        return SeparableLoss(loss_spec)
    if isinstance(loss_spec, (list, tuple)) and all(
        isinstance(loss, ScalarLoss) for loss in loss_spec
    ):
        return SeparableLoss(list(loss_spec))
    raise UnsupportedLossError(f"not a catalogued loss: {loss_spec!r}")


def chainrule_upper(
    loss_spec, map_id: str, point, kink_tol: float = SUBCHAIN_KINK_TOL
) -> SubgradientZonotope:
    """Get ``Jᵀ ∂_C ℓ(H(x))`` as a zonotope over the packed point."""
    outer = _outer(loss_spec)
    catalogued = get_map(map_id)
    image = catalogued.evaluate(catalogued.check(point)).ravel()
    inner = outer.clarke_zonotope(image, kink_tol)
    return inner.linear_map(jacobian(map_id, point).H)


def _fm_gradients(dataset: QualifiedDataset, P: np.ndarray):
    """Per-sample gradient matrices of the FM prediction."""
    gradients = []
    for sample in dataset.samples:
        gradient = np.zeros_like(P)
        if sample.indices:
            index = np.array(sample.indices, dtype=np.intp) - 1
            values = np.array(sample.values)
            combined = P[:, index] @ values
            gradient[:, index] = values * (combined[:, None]
                                           - P[:, index] * values)
        gradients.append(gradient)
    return gradients


def _check_fm_shape(dataset: QualifiedDataset, P) -> np.ndarray:
    P = np.asarray(P, dtype=np.float64)
    if P.ndim != 2 or P.shape[1] != dataset.d0:
        raise ShapeError(
            f"P must have {dataset.d0} columns, got shape {P.shape}"
        )
    return P


def fm_train_subdiff(
    dataset: QualifiedDataset, P, losses,
    kink_tol: float = SUBCHAIN_KINK_TOL,
) -> SubgradientZonotope:
    """Exact Clarke subdifferential of the FM training loss over ``P``.

    ``losses`` holds one scalar loss per sample (or one loss whose
    parameters broadcast over the samples).
    """
    P = _check_fm_shape(dataset, P)
    d, d0 = P.shape
    if d < 2 * d0 - 1:
        warnings.warn(
            f"latent dimension {d} below 2*d0 - 1 = {2 * d0 - 1}; the "
            "training subdifferential is only certified above it",
            CertificationWarning,
            stacklevel=2,
        )

    outer = _outer(losses)
    predictions = dataset.predictions(P)
    box = outer.clarke_zonotope(predictions, kink_tol)
    stacked = np.column_stack(
        [gradient.ravel() for gradient in _fm_gradients(dataset, P)]
    ) if dataset.samples else np.zeros((P.size, 0))
    return box.linear_map(stacked)


def _pair_arrays(pairs, m: int, n: int):
    pairs = np.asarray(list(pairs), dtype=np.intp).reshape(-1, 2)
    if pairs.size and (pairs.min() < 1 or pairs[:, 0].max() > m
                       or pairs[:, 1].max() > n):
        raise ShapeError("pair index out of range")
    return pairs[:, 0] - 1, pairs[:, 1] - 1


def _gmf_inner(h, P, Q, rows, cols):
    """Values ``⟨h, p_i, q_j⟩`` and their gradients over ``(h, P, Q)``."""
    d, m = P.shape
    n = Q.shape[1]
    values = np.einsum("s,sk,sk->k", h, P[:, rows], Q[:, cols])
    gradients = np.zeros((d + d * m + d * n, rows.size))
    for k, (i, j) in enumerate(zip(rows, cols)):
        dP = np.zeros((d, m))
        dQ = np.zeros((d, n))
        dP[:, i] = h * Q[:, j]
        dQ[:, j] = h * P[:, i]
        gradients[:, k] = np.concatenate(
            [P[:, i] * Q[:, j], dP.ravel(), dQ.ravel()]
        )
    return values, gradients


def _smooth_outer(outer) -> SeparableLoss:
    outer = _outer(outer)
    losses = outer.losses if isinstance(outer, SeparableLoss) else None
    if losses is None:
        raise UnsupportedLossError("outer GMF losses must be scalar losses")
    each = [losses] if isinstance(losses, ScalarLoss) else losses
    if not all(loss.smooth for loss in each):
        raise UnsupportedLossError(
            "outer GMF losses must be strictly differentiable"
        )
    return outer


def gmf_subdiff(
    v: float, h, P, Q, pairs, activation: ScalarLoss, outer,
    kink_tol: float = SUBCHAIN_KINK_TOL,
) -> SubgradientZonotope:
    """Clarke subdifferential of the generalized MF loss.

    The variables are packed as ``(v, h, P, Q)``. Each observed pair
    ``(i, j)`` contributes ``σ(f_ij)·ℓ'_ij`` to the ``v`` coordinate and
    ``ℓ'_ij·v·∂σ(f_ij)·∇f_ij`` to the rest.
    """
    if not isinstance(activation, ScalarLoss):
        raise UnsupportedLossError(f"unsupported activation {activation!r}")
    outer = _smooth_outer(outer)
    h = np.asarray(h, dtype=np.float64)
    P = np.asarray(P, dtype=np.float64)
    Q = np.asarray(Q, dtype=np.float64)
    rows, cols = _pair_arrays(pairs, P.shape[1], Q.shape[1])

    values, gradients = _gmf_inner(h, P, Q, rows, cols)
    activated = activation.value(values)
    slopes = outer.gradient(v * activated)
    lo, hi = activation.clarke(values, kink_tol)
    lo = np.broadcast_to(lo, values.shape)
    hi = np.broadcast_to(hi, values.shape)

    size = 1 + gradients.shape[0]
    center = np.zeros(size)
    center[0] = float(np.sum(slopes * activated))
    scaled = gradients * (slopes * v)
    smooth = lo == hi
    center[1:] = scaled[:, smooth] @ lo[smooth]

    generators = np.zeros((size, int(np.sum(~smooth))))
    generators[1:, :] = scaled[:, ~smooth]
    return SubgradientZonotope(center, generators, lo[~smooth], hi[~smooth])


class Composite(object):
    """Loss composed with a map, as a function of a packed vector."""

    dim = 0
    kink_tol = SUBCHAIN_KINK_TOL

    def value(self, vector) -> float:
        """Evaluate the composite."""
        raise NotImplementedError

    def gradient(self, vector) -> np.ndarray:
        """Gradient at a differentiable point."""
        raise NotImplementedError

    def kink_distance(self, vector) -> float:
        """Distance of the loss arguments to their kinks."""
        raise NotImplementedError

    def upper(self, vector) -> SubgradientZonotope:
        """Chain-rule upper set at ``vector``."""
        raise NotImplementedError


class MapComposite(Composite):
    """``ℓ ∘ H`` for a catalogued map and an outer loss."""

    def __init__(self, map_id: str, point, loss_spec,
                 kink_tol: float = SUBCHAIN_KINK_TOL):
        """Fix the map, the point layout and the outer loss."""
        self.kink_tol = kink_tol
        self.map = get_map(map_id)
        self.point = self.map.check(point)
        self.outer = _outer(loss_spec)
        self.dim = point.size

    def _image(self, vector):
        point = self.point.unpack(vector)
        return point, self.map.evaluate(point)

    def value(self, vector):
        """Evaluate ``ℓ(H(x))``."""
        return self.outer.value(self._image(vector)[1].ravel())

    def gradient(self, vector):
        """Pull the outer gradient back through the adjoint."""
        point, image = self._image(vector)
        outer = self.outer.gradient(image.ravel()).reshape(image.shape)
        return self.map.vjp(point, outer)

    def kink_distance(self, vector):
        """Kink distance of the outer loss at the image."""
        return self.outer.kink_distance(self._image(vector)[1].ravel())

    def upper(self, vector):
        """Chain-rule upper set."""
        return chainrule_upper(self.outer, self.map.map_id,
                               self.point.unpack(vector), self.kink_tol)


class FMTrainingComposite(Composite):
    """FM training loss ``Σ ℓ_k(f_FM(x_k; P))`` over packed ``P``."""

    def __init__(self, dataset: QualifiedDataset, d: int, losses,
                 kink_tol: float = SUBCHAIN_KINK_TOL):
        """Fix the dataset, the latent dimension and the losses."""
        self.kink_tol = kink_tol
        self.dataset = dataset
        self.shape = (d, dataset.d0)
        self.outer = _outer(losses)
        self.dim = d * dataset.d0

    def value(self, vector):
        """Evaluate the training loss."""
        P = np.reshape(vector, self.shape)
        return self.outer.value(self.dataset.predictions(P))

    def gradient(self, vector):
        """Sum the per-sample gradients weighted by loss derivatives."""
        P = np.reshape(vector, self.shape)
        slopes = self.outer.gradient(self.dataset.predictions(P))
        total = np.zeros(self.shape)
        for slope, gradient in zip(slopes, _fm_gradients(self.dataset, P)):
            total += slope * gradient
        return total.ravel()

    def kink_distance(self, vector):
        """Kink distance over all predictions."""
        P = np.reshape(vector, self.shape)
        return self.outer.kink_distance(self.dataset.predictions(P))

    def upper(self, vector):
        """Training subdifferential."""
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", CertificationWarning)
            return fm_train_subdiff(self.dataset,
                                    np.reshape(vector, self.shape),
                                    self.outer, self.kink_tol)


class GMFComposite(Composite):
    """Generalized MF loss over packed ``(v, h, P, Q)``."""

    def __init__(self, d: int, m: int, n: int, pairs,
                 activation: ScalarLoss, outer,
                 kink_tol: float = SUBCHAIN_KINK_TOL):
        """Fix sizes, observed pairs, activation and outer losses."""
        self.kink_tol = kink_tol
        self.sizes = (d, m, n)
        self.pairs = [tuple(pair) for pair in pairs]
        self.rows, self.cols = _pair_arrays(self.pairs, m, n)
        self.activation = activation
        self.outer = _smooth_outer(outer)
        self.dim = 1 + d + d * m + d * n

    def unpack(self, vector) -> Tuple[float, np.ndarray, np.ndarray,
                                      np.ndarray]:
        """Split a packed vector into ``(v, h, P, Q)``."""
        d, m, n = self.sizes
        vector = np.asarray(vector, dtype=np.float64)
        if vector.shape != (self.dim,):
            raise ShapeError(f"expected a vector of length {self.dim}")
        h = vector[1:1 + d]
        P = vector[1 + d:1 + d + d * m].reshape(d, m)
        Q = vector[1 + d + d * m:].reshape(d, n)
        return float(vector[0]), h, P, Q

    @staticmethod
    def pack(v, h, P, Q) -> np.ndarray:
        """Concatenate ``(v, h, P, Q)``."""
        return np.concatenate([[v], np.ravel(h), np.ravel(P), np.ravel(Q)])

    def _inner(self, vector):
        v, h, P, Q = self.unpack(vector)
        values, gradients = _gmf_inner(h, P, Q, self.rows, self.cols)
        return v, values, gradients

    def value(self, vector):
        """Evaluate ``Σ ℓ_ij(v·σ(f_ij))``."""
        v, values, _ = self._inner(vector)
        return self.outer.value(v * self.activation.value(values))

    def gradient(self, vector):
        """Analytic gradient away from activation kinks."""
        v, values, gradients = self._inner(vector)
        activated = self.activation.value(values)
        slopes = self.outer.gradient(v * activated)
        rest = gradients @ (slopes * v * self.activation.derivative(values))
        return np.concatenate([[np.sum(slopes * activated)], rest])

    def kink_distance(self, vector):
        """Kink distance of the activation arguments."""
        _, values, _ = self._inner(vector)
        return float(np.min(self.activation.kink_distance(values),
                            initial=np.inf))

    def upper(self, vector):
        """Generalized MF subdifferential."""
        v, h, P, Q = self.unpack(vector)
        return gmf_subdiff(v, h, P, Q, self.pairs, self.activation,
                           self.outer, self.kink_tol)


@dataclasses.dataclass(frozen=True, eq=False)
class GradientSample:
    """Gradients sampled at differentiable points near a base point."""

    base: np.ndarray
    radius: float
    seed: int
    points: np.ndarray
    gradients: np.ndarray
    rejections: int

    def to_dict(self) -> dict:
        """Serialize the sample summary and the gradients."""
        return {
            "seed": self.seed,
            "radius": self.radius,
            "samples": len(self.gradients),
            "kink_rejections": self.rejections,
            "max_gradient_norm": float(np.max(
                np.linalg.norm(self.gradients, axis=1), initial=0.0
            )),
            "gradients": self.gradients.tolist(),
        }


def _ball_point(rng: np.random.Generator, center, radius: float):
    direction = rng.standard_normal(center.size)
    norm = np.linalg.norm(direction)
    if norm == 0.0:
        return center.copy()
    scale = radius * rng.random() ** (1.0 / center.size)
    return center + scale * direction / norm


def sample_gradients(
    composite: Composite,
    point,
    radius: float,
    n_samples: int,
    seed: int = SUBCHAIN_SEED,
    max_kink_rate: float = SUBCHAIN_MAX_KINK_RATE,
) -> GradientSample:
    """Sample gradients uniformly in the ``radius``-ball around ``point``.

    Points within ``composite.kink_tol`` of a loss kink are redrawn. One
    sub-stream per sample index keeps the result independent of the
    worker count.
    """
    if radius <= 0:
        raise ShapeError("sampling radius must be positive")
    center = np.asarray(point, dtype=np.float64).ravel()
    if center.size != composite.dim:
        raise ShapeError(
            f"point of size {center.size} for a composite of dim "
            f"{composite.dim}"
        )

    def draw(rng):
        rejected = 0
        for _ in range(SAMPLING_ATTEMPTS):
            candidate = _ball_point(rng, center, radius)
            if composite.kink_distance(candidate) > composite.kink_tol:
                return candidate, composite.gradient(candidate), rejected
            rejected += 1
        return None, None, rejected

    results = parallel_map(draw, index_streams(seed, "sample_gradients",
                                               n_samples))
    rejections = sum(result[2] for result in results)
    attempts = rejections + sum(result[0] is not None for result in results)
    if any(result[0] is None for result in results) or (
        attempts and rejections / attempts > max_kink_rate
    ):
        raise DegenerateSamplingError(
            f"{rejections} of {attempts} sample points hit a kink"
        )

    logger.debug("sampled %d gradients, %d kink rejections",
                 n_samples, rejections)
    return GradientSample(
        base=center,
        radius=float(radius),
        seed=int(seed),
        points=np.array([result[0] for result in results]).reshape(
            n_samples, center.size),
        gradients=np.array([result[1] for result in results]).reshape(
            n_samples, center.size),
        rejections=rejections,
    )


@dataclasses.dataclass(frozen=True)
class SupportGapReport:
    """Support-function comparison of an upper set and sampled gradients."""

    max_gap: float
    min_gap: float
    directions_checked: int
    inclusion_ok: bool

    def to_dict(self) -> dict:
        """Serialize the report."""
        return dataclasses.asdict(self)


def support_gap(
    upper: SubgradientZonotope,
    lower: Union[GradientSample, np.ndarray],
    directions: int = 100,
    seed: int = SUBCHAIN_SEED,
    extra: Optional[Sequence] = None,
    tol: float = SUBCHAIN_INCLUSION_TOL,
) -> SupportGapReport:
    """Compare support functions over random unit directions.

    ``extra`` directions are checked in addition, after normalization.
    Inclusion holds when no gap falls below ``-tol``.
    """
    if isinstance(lower, GradientSample):
        gradients = lower.gradients
    else:
        gradients = np.atleast_2d(np.asarray(lower, dtype=np.float64))
    if gradients.shape[1] != upper.dim:
        raise ShapeError(
            f"gradients of size {gradients.shape[1]} for dim {upper.dim}"
        )

    rng = named_stream(seed, "support_gap")
    candidates: List[np.ndarray] = [
        np.asarray(v, dtype=np.float64) for v in (extra or [])
    ]
    candidates.extend(rng.standard_normal((directions, upper.dim)))

    gaps = []
    for direction in candidates:
        norm = np.linalg.norm(direction)
        if norm == 0.0:
            continue
        direction = direction / norm
        lower_support = float(np.max(gradients @ direction, initial=-np.inf))
        gaps.append(upper.support(direction) - lower_support)

    gaps = np.array(gaps)
    return SupportGapReport(
        max_gap=float(np.max(gaps, initial=-np.inf)),
        min_gap=float(np.min(gaps, initial=np.inf)),
        directions_checked=int(gaps.size),
        inclusion_ok=bool(np.all(gaps >= -tol)),
    )


def contains_zero(
    zonotope: SubgradientZonotope, tol: float = SUBCHAIN_ZERO_TOL
) -> Tuple[bool, np.ndarray, float]:
    """Check ``0 ∈ Z`` up to a squared norm of ``tol``.

    Returns the verdict, the coefficients and the minimal norm.
    """
    distance, witness = zonotope.distance(np.zeros(zonotope.dim))
    return distance ** 2 <= tol, witness, distance


def inclusion_residuals(
    upper_at, sample: GradientSample
) -> np.ndarray:
    """Distance of every sampled gradient to the upper set at its point.

    ``upper_at`` maps a packed point to its upper set.
    """
    return np.array([
        upper_at(point).distance(gradient)[0]
        for point, gradient in zip(sample.points, sample.gradients)
    ])


@dataclasses.dataclass(frozen=True)
class DecayReport:
    """Largest sampled gradient norm per radius and the fitted decay."""

    radii: Tuple[float, ...]
    max_norms: Tuple[float, ...]
    slope: Optional[float]
    constant: float
    verified: bool

    def to_dict(self) -> dict:
        """Serialize the report."""
        return dataclasses.asdict(self)


def stationarity_decay(
    composite: Composite,
    point,
    radii: Sequence[float] = (1e-2, 1e-3, 1e-4),
    n_samples: int = 50,
    seed: int = SUBCHAIN_SEED,
    zero_tol: float = SUBCHAIN_ZERO_TOL,
) -> DecayReport:
    """Fit ``max ‖∇f‖ ≤ C·r`` around ``point``.

    ``C`` comes from the first two radii and is verified, with a factor
    two of slack, on the remaining ones. The log-log slope is reported
    when all norms are positive.
    """
    if len(radii) < 3:
        raise ShapeError("at least three radii are needed")

    norms = []
    for radius in radii:
        sample = sample_gradients(composite, point, radius, n_samples, seed)
        norms.append(float(np.max(np.linalg.norm(sample.gradients, axis=1),
                                  initial=0.0)))

    radii_array = np.asarray(radii, dtype=np.float64)
    norms_array = np.asarray(norms)
    constant = float(np.max(norms_array[:2] / radii_array[:2]))
    verified = bool(np.all(
        norms_array[2:] <= 2 * constant * radii_array[2:] + zero_tol
    ))

    slope = None
    if np.all(norms_array > 0):
        slope = float(np.polyfit(np.log(radii_array),
                                 np.log(norms_array), 1)[0])
    return DecayReport(tuple(float(r) for r in radii), tuple(norms), slope,
                       constant, verified)
