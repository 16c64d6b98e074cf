"""Deterministic random number source and seed derivation.

All stochastic code in the package draws from a :class:`RandomSource`,
a thin wrapper around numpy's PCG64 generator. Identical seeds produce
identical draw sequences across runs and platforms.

Independent sub-streams (one per Monte Carlo trial, for example) are
derived with :func:`mix_seed`, a splitmix64 finalizer over
``master + (index + 1) * GOLDEN``. The function is documented here so
that external tooling can reproduce per-trial streams exactly.
"""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def mix_seed(master: int, index: int) -> int:
    """Derive the 64-bit seed of sub-stream `index` from a master seed."""
    if index < 0:
        raise ValueError("index must be non-negative")
    z = (int(master) + (index + 1) * _GOLDEN) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


class RandomSource:
    """Seeded deterministic generator confined to one logical thread."""

    def __init__(self, seed: int):
        seed = int(seed)
        if not 0 <= seed <= _MASK64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        self.seed = seed
        self._gen = np.random.Generator(np.random.PCG64(seed))

    def random(self, size=None):
        """Uniform draws from [0, 1)."""
        return self._gen.random(size)

    def uniform(self, low: float, high: float, size=None):
        return self._gen.uniform(low, high, size)

    def integers(self, low: int, high: int, size=None):
        return self._gen.integers(low, high, size)

    def permutation(self, n: int):
        return self._gen.permutation(n)

    def spawn(self, index: int) -> "RandomSource":
        """Independent sub-stream derived via :func:`mix_seed`."""
        return RandomSource(mix_seed(self.seed, index))

    def __repr__(self) -> str:  # pragma: no cover
        return f"RandomSource(seed={self.seed})"
