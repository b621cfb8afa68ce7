"""Deterministic 64-bit generator for reproducible sampling.

SplitMix64: the state advances by a fixed odd constant and each output is
a bijective mix of the new state.  Every draw is a pure function of
integers, so a seed produces the same stream on every platform and
Python build; published experiment tables can therefore be regenerated
bit-for-bit by third parties.
"""

from __future__ import annotations

MASK64 = (1 << 64) - 1

_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


class SplitMix64:
    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + _GAMMA) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * _MIX1) & MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & MASK64
        return z ^ (z >> 31)

    def next_below(self, n: int) -> int:
        """Uniform draw from [0, n), unbiased via rejection of the top band."""
        if n <= 0:
            raise ValueError(f"next_below needs a positive bound, got {n}")
        span = MASK64 + 1
        limit = span - span % n
        while True:
            u = self.next_u64()
            if u < limit:
                return u % n

    def next_bits(self, n: int) -> int:
        """Uniform n-bit integer, n <= 64."""
        if not 0 <= n <= 64:
            raise ValueError(f"bit count out of range: {n}")
        if n == 0:
            return 0
        return self.next_u64() & ((1 << n) - 1)

    def sample_indices(self, total: int, count: int) -> list[int]:
        """`count` distinct indices from range(total), uniformly without replacement.

        Sparse partial Fisher-Yates: only displaced slots are stored, so
        memory is O(count) even for huge ranges.
        """
        if count < 0 or count > total:
            raise ValueError(f"cannot sample {count} of {total}")
        displaced: dict[int, int] = {}
        picked = []
        for i in range(count):
            j = i + self.next_below(total - i)
            picked.append(displaced.get(j, j))
            displaced[j] = displaced.get(i, i)
        return picked


def derive_seed(base: int, *parts: int) -> int:
    """Fold integer parameters into a base seed, one mixing round per part.

    Used to give every cell of a parameter sweep its own stable stream.
    """
    rng = SplitMix64(base)
    acc = rng.next_u64()
    for p in parts:
        acc = SplitMix64(acc ^ (p & MASK64)).next_u64()
    return acc
