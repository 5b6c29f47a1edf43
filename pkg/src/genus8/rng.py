"""SplitMix64, the one pseudorandom generator used everywhere.

The generator is part of the reproducibility contract: fixtures built from a
seed must be the same on every platform, so no library default is used.
State update and output mixing follow the reference SplitMix64 constants.
"""

from __future__ import annotations

MASK64 = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = int(seed) & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Uniform-ish integer in [0, n) by plain reduction."""
        return self.next_u64() % n

    def integer(self, lo: int, hi: int) -> int:
        """Integer in the closed range [lo, hi]."""
        return lo + self.below(hi - lo + 1)

    def element(self, field, bound: int = 9):
        """A field element: a residue over F_p, a small integer over Q."""
        if field.char:
            return self.below(field.char)
        return field(self.integer(-bound, bound))

    def vector(self, field, n: int, bound: int = 9):
        return [self.element(field, bound) for _ in range(n)]

    def matrix(self, field, rows: int, cols: int, bound: int = 9):
        return [self.vector(field, cols, bound) for _ in range(rows)]
