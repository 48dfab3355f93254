"""Bitmask subsets and colex ranking of fixed-size subsets.

Subsets of ``{0..n-1}`` are plain ints used as bit-sets. Ranking is
relative to a *base* subset: positions refer to the sorted members of
the base, so the same machinery indexes the r-subsets of any vertex set.

A split of a base is a pair (r-subset S', pivot y in S'), flattened to
``rank(S') * r + position of y inside S'``.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterable

import numpy as np

MAX_N = 63


def check_n(n: int) -> None:
    if n > MAX_N:
        raise ValueError(f"n={n} exceeds the {MAX_N}-vertex bit-set limit")


def mask_of(items: Iterable[int]) -> int:
    m = 0
    for i in items:
        m |= 1 << i
    return m


def members(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def full_mask(n: int) -> int:
    return (1 << n) - 1


def unrank_subset(index: int, m: int, r: int, base: int) -> int:
    """The index-th r-subset of ``base`` (|base| = m) in colex order."""
    elems = members(base)
    if len(elems) != m:
        raise ValueError(f"base has {len(elems)} elements, expected {m}")
    if not 0 <= index < comb(m, r):
        raise IndexError(f"subset index {index} outside [0, C({m},{r}))")
    out = 0
    c = m
    for i in range(r, 0, -1):
        # largest position c with C(c, i) <= index
        c -= 1
        while comb(c, i) > index:
            c -= 1
        index -= comb(c, i)
        out |= 1 << elems[c]
    return out


def rank_subset(s: int, base: int) -> int:
    """Inverse of :func:`unrank_subset`."""
    if s & ~base:
        raise ValueError("subset is not contained in base")
    elems = members(base)
    pos = {e: p for p, e in enumerate(elems)}
    return sum(comb(pos[e], i) for i, e in enumerate(members(s), start=1))


def split_space_size(m: int, r: int) -> int:
    """Number of (r-subset, pivot) pairs over an m-element base."""
    return comb(m, r) * r


def split_unrank(index: int, base: int, r: int) -> tuple[int, int]:
    """Decode a flat split index into (subset mask, pivot vertex)."""
    m = popcount(base)
    rank, pos = divmod(index, r)
    sub = unrank_subset(rank, m, r, base)
    return sub, members(sub)[pos]


def split_rank(sub: int, y: int, base: int) -> int:
    return rank_subset(sub, base) * popcount(sub) + members(sub).index(y)


@lru_cache(maxsize=None)
def local_combos(m: int, r: int) -> np.ndarray:
    """All r-subsets of ``range(m)`` as an (C(m,r), r) array, rows in colex order."""
    rows = sorted(combinations(range(m), r), key=lambda c: c[::-1])
    out = np.array(rows, dtype=np.int64).reshape(len(rows), r)
    out.setflags(write=False)
    return out


def subsets_of_size(n: int, r: int) -> np.ndarray:
    """All r-subsets of ``range(n)`` as sorted (ascending = colex) int64 masks."""
    combos = local_combos(n, r)
    masks = np.left_shift(np.int64(1), combos).sum(axis=1) if r else np.zeros(1, np.int64)
    return masks.astype(np.int64)


def members_matrix(masks: np.ndarray, n: int, r: int) -> np.ndarray:
    """Sorted members of each r-subset mask, shape (len(masks), r)."""
    bits = (masks[:, None] >> np.arange(n, dtype=np.int64)) & 1
    idx = np.nonzero(bits)[1]
    return idx.reshape(len(masks), r)
