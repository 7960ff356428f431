"""Seeded pseudo-random numbers with a frozen, portable algorithm.

splitmix64 drives everything: a 64-bit state advances by a fixed odd
constant and the output is a finalizer over the new state. Uniform doubles
take the top 53 bits; Gaussians come from the Box-Muller transform. The
sequence for a given seed is part of the file-format contract (generated
datasets must be reproducible bit for bit), so no library generator is used.
"""
from __future__ import annotations

import math

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB
_TWO53 = float(1 << 53)


class SplitMix64:
    """Deterministic 64-bit generator (public-domain splitmix64 recipe)."""

    __slots__ = ("state", "_spare")

    def __init__(self, seed: int) -> None:
        self.state = int(seed) & _MASK
        self._spare: float | None = None

    def next_u64(self) -> int:
        self.state = (self.state + _GAMMA) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK
        return z ^ (z >> 31)

    def random(self) -> float:
        """Uniform double in [0, 1) from the top 53 bits."""
        return (self.next_u64() >> 11) / _TWO53

    def uniform(self, lo: float, hi: float) -> float:
        return lo + (hi - lo) * self.random()

    def normal(self, mu: float = 0.0, sigma: float = 1.0) -> float:
        """Standard Box-Muller; generates values in pairs and caches the spare."""
        if self._spare is not None:
            z = self._spare
            self._spare = None
            return mu + sigma * z
        # u1 is shifted into (0, 1] so log(u1) is always finite.
        u1 = ((self.next_u64() >> 11) + 1) / _TWO53
        u2 = (self.next_u64() >> 11) / _TWO53
        r = math.sqrt(-2.0 * math.log(u1))
        theta = 2.0 * math.pi * u2
        self._spare = r * math.sin(theta)
        return mu + sigma * (r * math.cos(theta))
