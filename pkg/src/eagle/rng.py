"""Seeded random sources.

The cipher code only calls ``getrandbits``, so ``random.Random`` is the scalar
source.  Bulk statistical runs use numpy generators.  Both are derived from
``(seed, index)`` so trial ``i`` of a run is the same no matter how many other
trials run or in what order.
"""

from __future__ import annotations

import random
import secrets

import numpy as np


def fresh_seed() -> int:
    return secrets.randbits(63)


def scalar_rng(seed: int, *index: int) -> random.Random:
    # str seeding goes through sha512, stable across platforms and versions
    return random.Random(":".join(map(str, (seed, *index))))


def array_rng(seed: int, *index: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, *index])))


def random_words(rng: np.random.Generator, width: int, n: int) -> np.ndarray:
    return rng.integers(0, (1 << width) - 1, size=n, dtype=np.uint64, endpoint=True)


class StubSource:
    """Replays fixed values for ``getrandbits`` calls, for hand-traced tests."""

    def __init__(self, values):
        self._values = list(values)

    def getrandbits(self, k: int) -> int:
        if not self._values:
            raise RuntimeError("stub random source exhausted")
        v = self._values.pop(0)
        if v >> k:
            raise ValueError(f"stub value {v} does not fit in {k} bits")
        return v
