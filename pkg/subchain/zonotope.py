# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 Graz University of Technology.
#
# subchain is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Subgradient zonotopes.

A zonotope is the set ``{c + G s : lo ≤ s ≤ hi}``. It is the image of a
box under an affine map, which is exactly the form every chain-rule upper
set in this package takes.
"""

import dataclasses
from typing import Tuple

import numpy as np
from scipy.optimize import lsq_linear

from .errors import ShapeError


@dataclasses.dataclass(frozen=True, eq=False)
class SubgradientZonotope:
    """Center, generator columns and one interval per generator.

    >>> box = SubgradientZonotope([0.0, 0.0], [[1.0], [1.0]], [-1.0], [1.0])
    >>> box.support([0.5, 0.5])
    1.0
    """

    center: np.ndarray
    generators: np.ndarray
    lo: np.ndarray
    hi: np.ndarray

    def __post_init__(self):
        """Validate shapes and interval order."""
        center = np.array(self.center, dtype=np.float64).ravel()
        lo = np.array(self.lo, dtype=np.float64).ravel()
        hi = np.array(self.hi, dtype=np.float64).ravel()
        generators = np.array(self.generators, dtype=np.float64)
        if generators.size == 0:
            generators = np.zeros((center.size, lo.size))
        generators = generators.reshape(center.size, -1)

        if not lo.size == hi.size == generators.shape[1]:
            raise ShapeError("one interval per generator required")
        if np.any(lo > hi):
            raise ShapeError("interval lower bounds exceed upper bounds")

        for name, value in (("center", center), ("generators", generators),
                            ("lo", lo), ("hi", hi)):
            value.setflags(write=False)
            object.__setattr__(self, name, value)

    @classmethod
    def point(cls, center) -> "SubgradientZonotope":
        """Get the singleton ``{center}``."""
        center = np.ravel(center)
        return cls(center, np.zeros((center.size, 0)), [], [])

    @property
    def dim(self) -> int:
        """Dimension of the ambient space."""
        return self.center.size

    @property
    def count(self) -> int:
        """Number of generators."""
        return self.generators.shape[1]

    def __add__(self, other: "SubgradientZonotope") -> "SubgradientZonotope":
        """Minkowski sum."""
        if other.dim != self.dim:
            raise ShapeError(f"cannot add zonotopes of dims "
                             f"{self.dim} and {other.dim}")
        return SubgradientZonotope(
            self.center + other.center,
            np.hstack([self.generators, other.generators]),
            np.concatenate([self.lo, other.lo]),
            np.concatenate([self.hi, other.hi]),
        )

    def linear_map(self, operator) -> "SubgradientZonotope":
        """Image under a matrix or :class:`LinearOperator`."""
        center = np.ravel(operator @ self.center)
        if self.count == 0:
            generators = np.zeros((center.size, 0))
        else:
            generators = np.reshape(operator @ self.generators,
                                    (center.size, self.count))
        return SubgradientZonotope(center, generators, self.lo, self.hi)

    def support(self, direction) -> float:
        """Support function ``max ⟨z, v⟩`` over the zonotope."""
        direction = np.ravel(direction)
        if direction.size != self.dim:
            raise ShapeError(
                f"direction of size {direction.size} for dim {self.dim}"
            )
        weights = self.generators.T @ direction
        extreme = np.maximum(self.lo * weights, self.hi * weights)
        return float(self.center @ direction + np.sum(extreme))

    def folded(self) -> "SubgradientZonotope":
        """Move degenerate intervals into the center, drop null columns."""
        fixed = self.lo == self.hi
        center = self.center + self.generators[:, fixed] @ self.lo[fixed]
        keep = ~fixed & np.any(self.generators != 0.0, axis=0)
        return SubgradientZonotope(center, self.generators[:, keep],
                                   self.lo[keep], self.hi[keep])

    def distance(self, target) -> Tuple[float, np.ndarray]:
        """Euclidean distance of ``target`` to the set and a minimizer.

        Solved as box-constrained least squares over the generators with
        a proper interval and a nonzero column; the others are pinned to
        their lower bound or midpoint in the returned coefficients.
        """
        target = np.ravel(np.asarray(target, dtype=np.float64))
        if target.size != self.dim:
            raise ShapeError(
                f"point of size {target.size} for dim {self.dim}"
            )

        fixed = self.lo == self.hi
        free = ~fixed & np.any(self.generators != 0.0, axis=0)
        coefficients = np.where(fixed, self.lo, (self.lo + self.hi) / 2)
        offset = (target - self.center
                  - self.generators[:, ~free] @ coefficients[~free])
        if not np.any(free):
            return float(np.linalg.norm(offset)), coefficients

        columns = self.generators[:, free]
        result = lsq_linear(columns, offset,
                            bounds=(self.lo[free], self.hi[free]),
                            method="bvls")
        coefficients[free] = result.x
        residual = columns @ result.x - offset
        return float(np.linalg.norm(residual)), coefficients

    def contains(self, target, tol: float) -> bool:
        """Check membership up to distance ``tol``."""
        return self.distance(target)[0] <= tol

    def to_dict(self) -> dict:
        """Serialize as center plus generator list."""
        return {
            "center": self.center.tolist(),
            "generators": [
                {"vector": column.tolist(), "lo": float(lo), "hi": float(hi)}
                for column, lo, hi in zip(self.generators.T, self.lo, self.hi)
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SubgradientZonotope":
        """Deserialize from :meth:`to_dict` output."""
        center = np.asarray(data["center"], dtype=np.float64)
        generators = data.get("generators", [])
        if not generators:
            return cls.point(center)
        return cls(
            center,
            np.column_stack([g["vector"] for g in generators]),
            [g["lo"] for g in generators],
            [g["hi"] for g in generators],
        )
