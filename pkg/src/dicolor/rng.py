"""Portable seeded randomness.

Every random decision in the package goes through :class:`Rng`, a thin layer
over numpy's Philox bit generator (Philox-4x64 with 10 rounds, a
counter-based generator: output block i is a keyed bijection of the counter
i).  Only the raw 64-bit output words are consumed; floats and bounded
integers are derived here, so a seed gives the same stream on every platform
and numpy release that ships Philox and SeedSequence.

Seeds are tuples of nonnegative integers hashed by ``SeedSequence``; the
experiments use ``(seed, trial)`` so that trials are independent of the order
in which they run.
"""
from __future__ import annotations

import numpy as np

_DOUBLE = 2.0 ** -53


class Rng:
    def __init__(self, *key: int):
        if not key:
            raise ValueError("at least one seed word is required")
        words = [int(k) for k in key]
        if any(w < 0 for w in words):
            raise ValueError("seed words must be nonnegative")
        self.key = tuple(words)
        self._bits = np.random.Philox(np.random.SeedSequence(words))

    def raw(self, size=None):
        return self._bits.random_raw(size)

    def random(self, size=None):
        """Uniform doubles in [0, 1) built from the top 53 bits of each word."""
        if size is None:
            return (int(self._bits.random_raw()) >> 11) * _DOUBLE
        return (self._bits.random_raw(size) >> np.uint64(11)).astype(np.float64) * _DOUBLE

    def below(self, n: int, size=None):
        """Integers in [0, n) by scaling a uniform double."""
        if n <= 0:
            raise ValueError("n must be positive")
        if size is None:
            return min(int(self.random() * n), n - 1)
        return np.minimum((self.random(size) * n).astype(np.int64), n - 1)

    def coin(self, size=None):
        if size is None:
            return self.random() < 0.5
        return self.random(size) < 0.5

    def choice(self, seq):
        return seq[self.below(len(seq))]

    def shuffle(self, items: list) -> list:
        """In-place Fisher-Yates shuffle; returns ``items`` for chaining."""
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]
        return items

    def sample(self, population, m: int) -> list:
        pool = list(population)
        if m > len(pool):
            raise ValueError("sample larger than population")
        for i in range(m):
            j = i + self.below(len(pool) - i)
            pool[i], pool[j] = pool[j], pool[i]
        return pool[:m]

    def spawn(self, *key: int) -> "Rng":
        return Rng(*self.key, *key)


def as_rng(seed) -> Rng:
    """Accept an :class:`Rng`, an int, or a tuple of ints."""
    if isinstance(seed, Rng):
        return seed
    if isinstance(seed, (tuple, list)):
        return Rng(*seed)
    return Rng(int(seed))
