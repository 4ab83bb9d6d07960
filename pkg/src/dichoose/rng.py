"""Seeded random streams.

A stream is identified by a master seed plus an optional path of integers
(typically a trial index).  Stream ``(seed, i)`` is the same no matter which
worker draws it or in which order trials run.
"""

from __future__ import annotations

import numpy as np


def make_rng(seed: int, *path: int) -> np.random.Generator:
    if seed < 0 or any(p < 0 for p in path):
        raise ValueError("seeds and stream indices must be non-negative")
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, *path])))


def random_subset(rng: np.random.Generator, universe_size: int, size: int) -> frozenset[int]:
    """Uniform ``size``-subset of ``{1, ..., universe_size}`` (partial Fisher-Yates)."""
    if not 0 <= size <= universe_size:
        raise ValueError(f"cannot draw {size} elements from {universe_size}")
    items = list(range(1, universe_size + 1))
    for i in range(size):
        j = i + int(rng.integers(0, universe_size - i))
        items[i], items[j] = items[j], items[i]
    return frozenset(items[:size])
