"""Exact-probability sampling from a seeded source."""

from __future__ import annotations

import math
import random
from fractions import Fraction
from typing import Hashable, Sequence, TypeVar

K = TypeVar("K", bound=Hashable)


def make_rng(seed: int = 0) -> random.Random:
    if not 0 <= seed < 1 << 64:
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
    return random.Random(seed)


def sample_exact(outcomes: Sequence[tuple[K, Fraction]], rng: random.Random) -> K:
    """Draw one key with exactly its rational probability.

    A single uniform integer on ``[0, D)``, ``D`` the common denominator, is
    located among the cumulative probabilities taken in the given order.
    """
    if not outcomes:
        raise ValueError("cannot sample from an empty distribution")
    total = sum(p for _, p in outcomes)
    if total != 1:
        raise ValueError(f"probabilities sum to {total}, not 1")
    denom = math.lcm(*(p.denominator for _, p in outcomes))
    draw = rng.randrange(denom)
    acc = 0
    for key, p in outcomes:
        acc += p.numerator * (denom // p.denominator)
        if draw < acc:
            return key
    raise AssertionError("unreachable: cumulative mass reached 1")
