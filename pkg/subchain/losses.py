# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 Graz University of Technology.
#
# subchain is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Catalog of scalar losses and their Clarke intervals.

All methods are vectorized; loss parameters may be arrays broadcasting
against the argument, which is how one loss object serves every output
of a map (per-output targets or labels).

>>> loss = make_loss("absolute", target=1.0)
>>> loss.clarke(1.0)
(array(-1.), array(1.))
"""

from typing import Dict, Sequence, Tuple, Type, Union

import numpy as np
from scipy.special import expit

from .config import SUBCHAIN_KINK_TOL
from .errors import InvariantError, ShapeError, UnsupportedLossError
from .zonotope import SubgradientZonotope


class ScalarLoss(object):
    """Base class of the catalogued scalar losses."""

    loss_id = ""
    smooth = True

    def __init__(self, **params):
        """Store the loss parameters as float arrays."""
        self.params = {
            name: np.asarray(value, dtype=np.float64)
            for name, value in params.items()
        }

    def __repr__(self) -> str:
        """Show id and parameters."""
        return f"{type(self).__name__}({self.to_dict()})"

    def value(self, t) -> np.ndarray:
        """Evaluate the loss."""
        raise NotImplementedError

    def derivative(self, t) -> np.ndarray:
        """Derivative wherever the loss is differentiable."""
        raise NotImplementedError

    def kink(self) -> np.ndarray:
        """Location of the nondifferentiability."""
        raise NotImplementedError

    def kink_interval(self) -> Tuple[np.ndarray, np.ndarray]:
        """Clarke interval at the kink."""
        raise NotImplementedError

    def kink_distance(self, t) -> np.ndarray:
        """Distance of ``t`` to the nondifferentiable set."""
        t = np.asarray(t, dtype=np.float64)
        if self.smooth:
            return np.full(t.shape, np.inf)
        return np.abs(t - self.kink())

    def at_kink(self, t, tol: float = SUBCHAIN_KINK_TOL) -> np.ndarray:
        """Check whether ``t`` counts as a kink."""
        return self.kink_distance(t) <= tol

    def clarke(self, t, tol: float = SUBCHAIN_KINK_TOL):
        """Get the Clarke interval ``(lo, hi)`` at ``t``."""
        t = np.asarray(t, dtype=np.float64)
        slope = self.derivative(t)
        if self.smooth:
            return slope, slope.copy()
        lo, hi = (np.broadcast_to(bound, slope.shape)
                  for bound in self.kink_interval())
        kinked = self.at_kink(t, tol)
        return np.where(kinked, lo, slope), np.where(kinked, hi, slope)

    def to_dict(self) -> dict:
        """Serialize id and parameters."""
        return {
            "id": self.loss_id,
            **{name: value.tolist() for name, value in self.params.items()},
        }


class SquareLoss(ScalarLoss):
    """``(t - target)²``."""

    loss_id = "square"

    def __init__(self, target=0.0):
        """Set the target."""
        super().__init__(target=target)

    def value(self, t):
        """Evaluate the loss."""
        return (np.asarray(t) - self.params["target"]) ** 2

    def derivative(self, t):
        """Get ``2(t - target)``."""
        return 2 * (np.asarray(t, dtype=np.float64) - self.params["target"])


class AbsoluteLoss(ScalarLoss):
    """``|t - target|``, Clarke interval ``[-1, 1]`` at the target."""

    loss_id = "absolute"
    smooth = False

    def __init__(self, target=0.0):
        """Set the target."""
        super().__init__(target=target)

    def value(self, t):
        """Evaluate the loss."""
        return np.abs(np.asarray(t) - self.params["target"])

    def derivative(self, t):
        """Get the sign of ``t - target``."""
        return np.sign(np.asarray(t, dtype=np.float64)
                       - self.params["target"])

    def kink(self):
        """The target."""
        return self.params["target"]

    def kink_interval(self):
        """Get ``[-1, 1]``."""
        return np.array(-1.0), np.array(1.0)


class HingeLoss(ScalarLoss):
    """``max(0, 1 - label·t)`` with a kink at ``label·t = 1``."""

    loss_id = "hinge"
    smooth = False

    def __init__(self, label=1.0):
        """Set the label, which must be nonzero."""
        super().__init__(label=label)
        if np.any(self.params["label"] == 0.0):
            raise InvariantError("hinge labels must be nonzero")

    def value(self, t):
        """Evaluate the loss."""
        return np.maximum(0.0, 1.0 - self.params["label"] * np.asarray(t))

    def derivative(self, t):
        """Get ``-label`` on the active side, zero otherwise."""
        label = self.params["label"]
        margin = label * np.asarray(t, dtype=np.float64)
        return np.where(margin < 1.0, -label, 0.0 * label)

    def kink(self):
        """Get ``1/label``."""
        return 1.0 / self.params["label"]

    def kink_interval(self):
        """Get the segment between ``-label`` and zero."""
        label = self.params["label"]
        return np.minimum(-label, 0.0), np.maximum(-label, 0.0)


class ShiftedReluLoss(ScalarLoss):
    """``max(t - shift, 0)``."""

    loss_id = "shifted_relu"
    smooth = False

    def __init__(self, shift=1.0):
        """Set the shift."""
        super().__init__(shift=shift)

    def value(self, t):
        """Evaluate the loss."""
        return np.maximum(np.asarray(t) - self.params["shift"], 0.0)

    def derivative(self, t):
        """Get the indicator of ``t > shift``."""
        t = np.asarray(t, dtype=np.float64)
        return (t > self.params["shift"]).astype(np.float64)

    def kink(self):
        """The shift."""
        return self.params["shift"]

    def kink_interval(self):
        """Get ``[0, 1]``."""
        return np.array(0.0), np.array(1.0)


class LogisticLoss(ScalarLoss):
    """``log(1 + exp(-label·t))``."""

    loss_id = "logistic"

    def __init__(self, label=1.0):
        """Set the label."""
        super().__init__(label=label)

    def value(self, t):
        """Evaluate the loss without overflow."""
        return np.logaddexp(0.0, -self.params["label"] * np.asarray(t))

    def derivative(self, t):
        """Get ``-label·σ(-label·t)``."""
        label = self.params["label"]
        return -label * expit(-label * np.asarray(t, dtype=np.float64))


LOSSES: Dict[str, Type[ScalarLoss]] = {
    loss.loss_id: loss
    for loss in (SquareLoss, AbsoluteLoss, HingeLoss, ShiftedReluLoss,
                 LogisticLoss)
}


def make_loss(loss_id: str, **params) -> ScalarLoss:
    """Build a catalogued loss.

    >>> float(make_loss("hinge", label=-1.0).kink())
    -1.0
    """
    try:
        loss = LOSSES[loss_id]
    except KeyError:
        raise UnsupportedLossError(
            f"unsupported loss '{loss_id}', expected one of {sorted(LOSSES)}"
        ) from None

    try:
        return loss(**params)
    except TypeError as error:
        raise UnsupportedLossError(
            f"bad parameters for loss '{loss_id}': {error}"
        ) from error


def labelled_loss(loss_id: str, labels) -> ScalarLoss:
    """Build a loss whose target or label parameter is ``labels``."""
    if loss_id in ("square", "absolute"):
        return make_loss(loss_id, target=labels)
    if loss_id in ("hinge", "logistic"):
        return make_loss(loss_id, label=labels)
    return make_loss(loss_id)


class CompositeLoss(object):
    """Outer function on the flattened image of a map."""

    def value(self, z) -> float:
        """Evaluate at the flat image ``z``."""
        raise NotImplementedError

    def gradient(self, z) -> np.ndarray:
        """Gradient at ``z`` away from kinks."""
        raise NotImplementedError

    def kink_distance(self, z) -> float:
        """Smallest distance of any loss argument to its kink."""
        raise NotImplementedError

    def clarke_zonotope(
        self, z, tol: float = SUBCHAIN_KINK_TOL
    ) -> SubgradientZonotope:
        """Clarke subdifferential at ``z``, kinks detected up to ``tol``."""
        raise NotImplementedError


class SeparableLoss(CompositeLoss):
    """Sum of scalar losses, one per output.

    ``losses`` is either one loss whose parameters broadcast over the
    outputs or a sequence of losses, one per output.
    """

    def __init__(self, losses: Union[ScalarLoss, Sequence[ScalarLoss]]):
        """Store the losses."""
        self.losses = losses

    def _parts(self, z):
        z = np.ravel(np.asarray(z, dtype=np.float64))
        if isinstance(self.losses, ScalarLoss):
            return [(self.losses, z)]
        if len(self.losses) != z.size:
            raise ShapeError(
                f"{len(self.losses)} losses for {z.size} outputs"
            )
        return [(loss, z[k:k + 1]) for k, loss in enumerate(self.losses)]

    def _gather(self, z, method, *args):
        parts = [
            np.broadcast_to(getattr(loss, method)(part, *args), part.shape)
            for loss, part in self._parts(z)
        ]
        return np.concatenate(parts) if parts else np.zeros(0)

    def value(self, z):
        """Sum the scalar losses."""
        return float(np.sum(self._gather(z, "value")))

    def gradient(self, z):
        """Stack the scalar derivatives."""
        return self._gather(z, "derivative")

    def kink_distance(self, z):
        """Smallest kink distance over all outputs."""
        return float(np.min(self._gather(z, "kink_distance"),
                            initial=np.inf))

    def clarke_zonotope(self, z, tol: float = SUBCHAIN_KINK_TOL):
        """Box-shaped zonotope, one generator per kinked output."""
        lo, hi = [], []
        for loss, part in self._parts(z):
            low, high = loss.clarke(part, tol)
            lo.append(np.broadcast_to(low, part.shape))
            hi.append(np.broadcast_to(high, part.shape))
        lo = np.concatenate(lo) if lo else np.zeros(0)
        hi = np.concatenate(hi) if hi else np.zeros(0)

        kinked = lo != hi
        center = np.where(kinked, 0.0, lo)
        generators = np.eye(lo.size)[:, kinked]
        return SubgradientZonotope(center, generators, lo[kinked],
                                   hi[kinked])


class ProductDifferenceLoss(CompositeLoss):
    """``σ(z₁z₄) - σ(z₂z₃)`` on the flat image of a 2×2 factorization.

    ``σ`` is the shifted ReLU. Positions refer to the row-major image, so
    the two products are entries ``(0, 3)`` and ``(1, 2)``; on the image
    of the 2×2 matrix factorization both products agree and the function
    vanishes identically.
    """

    first = (0, 3)
    second = (1, 2)

    def __init__(self, shift: float = 1.0):
        """Set the shift of the ReLU."""
        self.sigma = ShiftedReluLoss(shift)

    def _products(self, z):
        z = np.ravel(np.asarray(z, dtype=np.float64))
        if z.size != 4:
            raise ShapeError("the product difference needs a 4-vector")
        u = z[self.first[0]] * z[self.first[1]]
        v = z[self.second[0]] * z[self.second[1]]
        return z, u, v

    def _directions(self, z):
        du, dv = np.zeros(4), np.zeros(4)
        i, j = self.first
        du[i], du[j] = z[j], z[i]
        p, q = self.second
        dv[p], dv[q] = z[q], z[p]
        return du, dv

    def value(self, z):
        """Evaluate ``σ(u) - σ(v)``."""
        _, u, v = self._products(z)
        return float(self.sigma.value(u) - self.sigma.value(v))

    def gradient(self, z):
        """Get ``σ'(u)∇u - σ'(v)∇v``."""
        z, u, v = self._products(z)
        du, dv = self._directions(z)
        return self.sigma.derivative(u) * du - self.sigma.derivative(v) * dv

    def kink_distance(self, z):
        """Smaller of the two product distances to the shift."""
        _, u, v = self._products(z)
        return float(min(self.sigma.kink_distance(u),
                         self.sigma.kink_distance(v)))

    def clarke_zonotope(self, z, tol: float = SUBCHAIN_KINK_TOL):
        """Exact Clarke set: one generator per kinked product."""
        z, u, v = self._products(z)
        du, dv = self._directions(z)
        center = np.zeros(4)
        columns, lo, hi = [], [], []
        for direction, argument, sign in ((du, u, 1.0), (dv, v, -1.0)):
            low, high = self.sigma.clarke(argument, tol)
            if low == high:
                center += sign * float(low) * direction
                continue
            columns.append(direction)
            bounds = sorted((sign * float(low), sign * float(high)))
            lo.append(bounds[0])
            hi.append(bounds[1])
        generators = (np.column_stack(columns) if columns
                      else np.zeros((4, 0)))
        return SubgradientZonotope(center, generators, lo, hi)
