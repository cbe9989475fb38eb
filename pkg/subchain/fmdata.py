# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 Graz University of Technology.
#
# subchain is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Sparse FM datasets, the qualification check and pair bookkeeping.

A dataset is qualified when every two samples share at most one support
index. Then the pair sets of the samples are disjoint and the training
loss factors through one FM submapping over the union of those pairs.

Datasets are stored as JSON lines, a header ``{"d0": d0}`` followed by one
sample per line::

    {"d0": 4}
    {"y": 1.0, "x": {"1": 1.0, "3": 1.0}}
"""

import dataclasses
import json
import logging
from itertools import combinations
from typing import Dict, Iterable, List, Sequence, TextIO, Tuple

import numpy as np

from .errors import QualificationError, SchemaError, ShapeError
from .maps import eval_fm_sub
from .types import PairIndexer

logger = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True)
class SparseSample:
    """Sparse feature vector with 1-based indices and a label."""

    indices: Tuple[int, ...]
    values: Tuple[float, ...]
    y: float = 0.0

    def __post_init__(self):
        """Sort by index and reject zeros and duplicates."""
        if len(self.indices) != len(self.values):
            raise SchemaError("one value per index required")
        if len(set(self.indices)) != len(self.indices):
            raise SchemaError("sample indices must be unique")
        if any(index < 1 for index in self.indices):
            raise SchemaError("sample indices are 1-based")
        if any(value == 0.0 for value in self.values):
            raise SchemaError("explicit zeros are not stored")

        order = sorted(range(len(self.indices)), key=self.indices.__getitem__)
        object.__setattr__(
            self, "indices", tuple(int(self.indices[k]) for k in order)
        )
        object.__setattr__(
            self, "values", tuple(float(self.values[k]) for k in order)
        )
        object.__setattr__(self, "y", float(self.y))

    @classmethod
    def from_mapping(cls, x: Dict, y: float = 0.0) -> "SparseSample":
        """Build from an ``{index: value}`` mapping."""
        try:
            items = [(int(index), float(value)) for index, value in x.items()]
        except (TypeError, ValueError) as error:
            raise SchemaError(f"malformed sample: {error}") from error
        return cls(tuple(i for i, _ in items), tuple(v for _, v in items), y)

    @property
    def support(self) -> frozenset:
        """Set of nonzero indices."""
        return frozenset(self.indices)

    def pairs(self) -> List[Tuple[int, int]]:
        """All index pairs ``(i, j)``, ``j > i``, of the support."""
        return list(combinations(self.indices, 2))

    def dense(self, d0: int) -> np.ndarray:
        """Get the dense feature vector."""
        self.check_range(d0)
        vector = np.zeros(d0)
        vector[np.array(self.indices, dtype=np.intp) - 1] = self.values
        return vector

    def check_range(self, d0: int):
        """Raise :class:`SchemaError` for indices above ``d0``."""
        if self.indices and self.indices[-1] > d0:
            raise SchemaError(
                f"index {self.indices[-1]} exceeds d0 = {d0}"
            )

    def to_dict(self) -> dict:
        """Serialize as one dataset line."""
        return {
            "y": self.y,
            "x": {str(i): v for i, v in zip(self.indices, self.values)},
        }


def check_qualification(
    samples: Sequence[SparseSample], d0: int
) -> Tuple[bool, List[Tuple[int, int]]]:
    """Check that every two samples share at most one support index.

    Returns the verdict and every violating 1-based sample pair.

    >>> a = SparseSample((1, 2), (1.0, 1.0))
    >>> check_qualification([a, a, a], 2)
    (False, [(1, 2), (1, 3), (2, 3)])
    """
    owners: Dict[Tuple[int, int], List[int]] = {}
    for number, sample in enumerate(samples, 1):
        sample.check_range(d0)
        for pair in sample.pairs():
            owners.setdefault(pair, []).append(number)

    violations = {
        shared
        for numbers in owners.values()
        for shared in combinations(numbers, 2)
    }
    return not violations, sorted(violations)


@dataclasses.dataclass(frozen=True, eq=False)
class QualifiedDataset:
    """Qualified samples with their pair sets and pair coefficients.

    ``pairs`` is the union of the per-sample pair sets in lexicographic
    order, ``coefficients`` holds ``x_i·x_j`` for every such pair and
    ``positions[k]`` lists the 0-based positions of sample ``k``'s pairs.
    """

    samples: Tuple[SparseSample, ...]
    d0: int
    sample_pairs: Tuple[Tuple[Tuple[int, int], ...], ...]
    coefficients: np.ndarray
    indexer: PairIndexer
    positions: Tuple[np.ndarray, ...]

    @property
    def pairs(self) -> List[Tuple[int, int]]:
        """Union of the per-sample pair sets."""
        return self.indexer.pairs

    @property
    def labels(self) -> np.ndarray:
        """Sample labels."""
        return np.array([sample.y for sample in self.samples])

    def pair_values(self, P) -> np.ndarray:
        """Evaluate the FM submapping over the dataset pairs."""
        return eval_fm_sub(P, self.coefficients, self.indexer)

    def predictions(self, P) -> np.ndarray:
        """FM predictions of all samples from the pair values."""
        values = self.pair_values(P)
        return np.array([values[index].sum() for index in self.positions])

    def loss_through_pairs(self, P, loss) -> float:
        """Training loss evaluated through the flattened pair vector."""
        return float(np.sum(loss.value(self.predictions(P))))


def build_qualified(
    samples: Iterable[SparseSample], d0: int
) -> QualifiedDataset:
    """Build the pair bookkeeping of a qualified dataset.

    >>> data = build_qualified([SparseSample((1, 3), (2.0, 5.0))], 3)
    >>> data.pairs, data.coefficients
    ([(1, 3)], array([10.]))
    """
    samples = tuple(samples)
    qualified, violations = check_qualification(samples, d0)
    if not qualified:
        raise QualificationError(
            f"{len(violations)} sample pairs share two or more features",
            violations=violations,
        )

    values: Dict[Tuple[int, int], float] = {}
    sample_pairs = []
    for sample in samples:
        lookup = dict(zip(sample.indices, sample.values))
        pairs = tuple(sample.pairs())
        for i, j in pairs:
            if (i, j) in values:
                raise QualificationError(
                    f"pair ({i}, {j}) belongs to two samples",
                    violations=[(i, j)],
                )
            values[(i, j)] = lookup[i] * lookup[j]
        sample_pairs.append(pairs)

    indexer = PairIndexer(d0, values)
    coefficients = np.array([values[pair] for pair in indexer.pairs])
    positions = tuple(
        np.array([indexer.forward(i, j) - 1 for i, j in pairs],
                 dtype=np.intp)
        for pairs in sample_pairs
    )
    logger.debug("qualified dataset: %d samples, %d pairs",
                 len(samples), len(indexer))
    return QualifiedDataset(samples, d0, tuple(sample_pairs), coefficients,
                            indexer, positions)


def fm_predict(sample: SparseSample, P) -> float:
    """Homogeneous FM prediction ``Σ_{j>i} p_iᵀp_j x_i x_j``."""
    P = np.asarray(P, dtype=np.float64)
    if P.ndim != 2:
        raise ShapeError("P must be a matrix")
    if sample.indices and sample.indices[-1] > P.shape[1]:
        raise ShapeError(
            f"index {sample.indices[-1]} exceeds {P.shape[1]} features"
        )

    columns = P[:, np.array(sample.indices, dtype=np.intp) - 1]
    values = np.array(sample.values)
    gram = columns.T @ columns
    rows, cols = np.triu_indices(len(values), k=1)
    return float(np.sum(gram[rows, cols] * values[rows] * values[cols]))


def _parse_line(text: str, number: int):
    try:
        return json.loads(text)
    except json.JSONDecodeError as error:
        raise SchemaError(f"line {number}: invalid JSON: {error}") from error


def load_dataset(stream: TextIO) -> Tuple[int, List[SparseSample]]:
    """Read a JSON-lines dataset, header first.

    Errors name the offending line.
    """
    lines = [
        (number, text) for number, text in enumerate(stream, 1)
        if text.strip()
    ]
    if not lines:
        raise SchemaError("line 1: missing header {\"d0\": ...}")

    number, text = lines[0]
    header = _parse_line(text, number)
    d0 = header.get("d0") if isinstance(header, dict) else None
    if not isinstance(d0, int) or isinstance(d0, bool) or d0 < 1:
        raise SchemaError(f"line {number}: header needs a positive 'd0'")

    samples = []
    for number, text in lines[1:]:
        record = _parse_line(text, number)
        if not isinstance(record, dict) or not isinstance(
            record.get("x"), dict
        ):
            raise SchemaError(f"line {number}: expected {{'y': .., 'x': ..}}")
        try:
            sample = SparseSample.from_mapping(record["x"],
                                               float(record.get("y", 0.0)))
            sample.check_range(d0)
        except (SchemaError, TypeError, ValueError) as error:
            raise SchemaError(f"line {number}: {error}") from error
        samples.append(sample)
    return d0, samples


def dump_dataset(samples: Iterable[SparseSample], d0: int, stream: TextIO):
    """Write a JSON-lines dataset with header."""
    stream.write(json.dumps({"d0": d0}) + "\n")
    for sample in samples:
        stream.write(json.dumps(sample.to_dict()) + "\n")
