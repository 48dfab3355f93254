"""Seeded random instances."""
from __future__ import annotations

import random

from .overlap import Instance


def random_strings(n: int, k: int, alphabet: str, seed: int) -> list[str]:
    if n < 1 or k < 1:
        raise ValueError("n and k must be >= 1")
    if len(set(alphabet)) < 2:
        raise ValueError("alphabet needs at least two symbols")
    rng = random.Random(seed)
    return ["".join(rng.choice(alphabet) for _ in range(k)) for _ in range(n)]


def random_instance(n: int, k: int, alphabet: str, seed: int) -> Instance:
    """n distinct length-k strings (hence containment-free)."""
    if len(set(alphabet)) ** k < n:
        raise ValueError(f"only {len(set(alphabet)) ** k} distinct strings of length {k}")
    rng = random.Random(seed)
    seen: dict[str, None] = {}
    while len(seen) < n:
        seen.setdefault("".join(rng.choice(alphabet) for _ in range(k)))
    return Instance(tuple(seen))
