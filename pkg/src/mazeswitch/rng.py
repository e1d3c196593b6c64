"""Portable seeded randomness for maze carving and exploration draws.

SplitMix64: the state walks by a fixed odd increment and every output is
finalized with two xor-shift-multiply rounds. Used instead of
``random.Random`` so that a 64-bit seed pins the exact stream in any
language that reimplements these ten lines, keeping generated layouts and
action sequences reproducible across implementations.
"""

from __future__ import annotations

MASK64 = (1 << 64) - 1

_INCREMENT = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


class SplitMix64:
    """One independent 64-bit stream per instance."""

    __slots__ = ("state",)

    def __init__(self, seed: int) -> None:
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + _INCREMENT) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * _MIX1) & MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & MASK64
        return z ^ (z >> 31)

    def random(self) -> float:
        """Uniform double in [0, 1) from the top 53 bits."""
        return (self.next_u64() >> 11) * 2.0**-53

    def randbelow(self, bound: int) -> int:
        """Uniform integer in [0, bound); rejection-sampled, no modulo bias."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        limit = (MASK64 + 1) - (MASK64 + 1) % bound
        while True:
            value = self.next_u64()
            if value < limit:
                return value % bound

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates shuffle."""
        for i in range(len(items) - 1, 0, -1):
            j = self.randbelow(i + 1)
            items[i], items[j] = items[j], items[i]
