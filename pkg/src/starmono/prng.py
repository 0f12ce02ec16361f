"""Deterministic, language-agnostic pseudo-random generator (splitmix64).

The recipe, so that any implementation can reproduce a seed's stream:

* state is a 64-bit integer; seeding sets ``state = seed mod 2^64``;
* each draw: ``state = (state + 0x9E3779B97F4A7C15) mod 2^64``, then
  ``z = state``; ``z = ((z XOR (z >> 30)) * 0xBF58476D1CE4E5B9) mod 2^64``;
  ``z = ((z XOR (z >> 27)) * 0x94D049BB133111EB) mod 2^64``; the output is
  ``z XOR (z >> 31)``;
* ``below(n)`` draws 64-bit words, rejecting values ``>= 2^64 - (2^64 mod n)``,
  and returns the first accepted word mod n.

Python's ``random`` module is deliberately not used anywhere outputs must be
stable across runs and implementations.
"""

from __future__ import annotations

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MUL1 = 0xBF58476D1CE4E5B9
_MUL2 = 0x94D049BB133111EB


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + _GAMMA) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * _MUL1) & _MASK
        z = ((z ^ (z >> 27)) * _MUL2) & _MASK
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Uniform integer in [0, n)."""
        if n <= 0:
            raise ValueError("below() needs a positive bound")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            v = self.next_u64()
            if v < limit:
                return v % n

    def int_in(self, lo: int, hi: int) -> int:
        """Uniform integer in the inclusive range [lo, hi]."""
        return lo + self.below(hi - lo + 1)

    def choice(self, seq):
        return seq[self.below(len(seq))]

    def fork(self) -> "SplitMix64":
        """Independent child stream (seeded from the next output)."""
        return SplitMix64(self.next_u64())
