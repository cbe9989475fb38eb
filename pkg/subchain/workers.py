# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 Graz University of Technology.
#
# subchain is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Seeded random streams and a small worker pool."""

import os
import zlib
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Sequence

import numpy as np


def thread_count() -> int:
    """Get the worker cap from ``SUBCHAIN_THREADS``.

    Unset or malformed values fall back to the CPU count.
    """
    value = os.environ.get("SUBCHAIN_THREADS", "")
    try:
        count = int(value)
    except ValueError:
        count = os.cpu_count() or 1
    return max(count, 1)


def named_stream(seed: int, name: str) -> np.random.Generator:
    """Get the generator of the sub-stream ``name`` of a master seed."""
    key = zlib.crc32(name.encode("utf-8"))
    sequence = np.random.SeedSequence(entropy=int(seed), spawn_key=(key,))
    return np.random.default_rng(sequence)


def index_streams(
    seed: int, name: str, count: int
) -> List[np.random.Generator]:
    """Get one independent generator per task index."""
    key = zlib.crc32(name.encode("utf-8"))
    parent = np.random.SeedSequence(entropy=int(seed), spawn_key=(key,))
    return [np.random.default_rng(child) for child in parent.spawn(count)]


def parallel_map(function: Callable, items: Sequence) -> list:
    """Apply ``function`` to every item, results in item order."""
    items = list(items)
    workers = min(thread_count(), len(items))
    if workers <= 1:
        return [function(item) for item in items]

    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(function, items))
