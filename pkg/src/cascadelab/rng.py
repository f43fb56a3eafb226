"""Deterministic RNG stream derivation for reproducible experiments.

Streams are keyed by a 64-bit base seed plus a trial index. The two are
mixed through SplitMix64 (a documented, fixed finalizer) and the mixed key
seeds a NumPy PCG64 generator. Identical (seed, trial) therefore always
yields an identical stream within this implementation; no bit-compatibility
with other implementations is claimed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def splitmix64(x: int) -> int:
    """One SplitMix64 step: advance by the golden-ratio gamma, then finalize."""
    x = (x + _GOLDEN) & _MASK64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


@dataclass(frozen=True)
class RngSeed:
    """64-bit base seed plus a trial index; one value pins one random stream."""

    seed: int
    trial: int = 0

    def key(self) -> int:
        """Mix (seed, trial) into a single 64-bit stream key."""
        return splitmix64(splitmix64(self.seed & _MASK64) ^ (self.trial & _MASK64))

    def generator(self) -> np.random.Generator:
        """PCG64 generator seeded from the mixed key."""
        return np.random.Generator(np.random.PCG64(self.key()))

    def child(self, index: int) -> "RngSeed":
        """Derived seed for an independent sub-stream (index selects which)."""
        return RngSeed(self.key(), index)
