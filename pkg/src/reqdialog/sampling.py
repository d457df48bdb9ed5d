"""Deterministic, portable random sampling.

Every stochastic choice in this project flows through the generator defined
here, so that identical seeds give identical samples on every platform and in
every reimplementation.  The generator is pinned to these constants:

* 64-bit linear congruential generator:
  ``state' = (state * 6364136223846793005 + 1442695040888963407) mod 2**64``
* bounded draws take the top 31 bits: ``(state' >> 33) % n``
* shuffling is the classic Fisher-Yates walk from the last index down to 1,
  drawing ``j`` uniformly from ``[0, i]`` at each step.

Do not swap in :mod:`random` or numpy generators anywhere downstream; their
streams are not part of the stable format.
"""

from __future__ import annotations

from typing import Iterable, Sequence, TypeVar

_MASK64 = (1 << 64) - 1
_MULTIPLIER = 6364136223846793005
_INCREMENT = 1442695040888963407
_SEED_SALT = 0x9E3779B97F4A7C15  # 2**64 / golden ratio, used only for seed derivation

T = TypeVar("T")


class Lcg64:
    """Minimal 64-bit LCG with the pinned constants above."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        if seed < 0:
            raise ValueError("seed must be a non-negative integer")
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state * _MULTIPLIER + _INCREMENT) & _MASK64
        return self.state

    def below(self, n: int) -> int:
        """Draw an integer in ``[0, n)``."""
        if n <= 0:
            raise ValueError("bound must be positive")
        return (self.next_u64() >> 33) % n


def shuffled(items: Iterable[T], seed: int) -> list[T]:
    """Return a new list holding ``items`` in seeded Fisher-Yates order."""
    out = list(items)
    rng = Lcg64(seed)
    for i in range(len(out) - 1, 0, -1):
        j = rng.below(i + 1)
        out[i], out[j] = out[j], out[i]
    return out


def sample_prefix(items: Sequence[T], k: int, seed: int) -> list[T]:
    """First ``k`` elements of the seeded permutation of ``items``.

    Prefixes nest: for a fixed seed, ``sample_prefix(x, k1)`` is a subset of
    ``sample_prefix(x, k2)`` whenever ``k1 <= k2``.
    """
    if not 0 <= k <= len(items):
        raise ValueError(f"sample size {k} out of range for {len(items)} items")
    return shuffled(items, seed)[:k]


def derive_seed(base: int, salt: int) -> int:
    """Deterministically derive a child seed from ``base`` and an index."""
    rng = Lcg64((base ^ ((salt + 1) * _SEED_SALT)) & _MASK64)
    rng.next_u64()
    return rng.next_u64()
