"""Instances, pairwise overlap graph and superstring reconstruction."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np


class InstanceError(ValueError):
    """Raised for malformed string collections."""


@dataclass(frozen=True)
class Instance:
    """An ordered collection of non-empty strings.

    ``origin[i]`` is the index of ``strings[i]`` in the raw input it was
    filtered from (identity when the instance was built directly).
    """

    strings: tuple[str, ...]
    origin: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if not self.strings:
            raise InstanceError("empty instance")
        if any(not s for s in self.strings):
            raise InstanceError("empty string")
        if not self.origin:
            object.__setattr__(self, "origin", tuple(range(len(self.strings))))
        if len(self.origin) != len(self.strings):
            raise InstanceError("origin length mismatch")

    @classmethod
    def of(cls, strings: Sequence[str]) -> "Instance":
        return cls(tuple(strings))

    @property
    def n(self) -> int:
        return len(self.strings)

    @property
    def lengths(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self.strings)

    @property
    def k(self) -> int | None:
        """Common string length, or None when lengths differ."""
        ls = set(self.lengths)
        return ls.pop() if len(ls) == 1 else None

    @property
    def alphabet(self) -> str:
        return "".join(sorted(set("".join(self.strings))))

    @property
    def total_length(self) -> int:
        return sum(self.lengths)


def preprocess(raw: Sequence[str]) -> tuple[Instance, dict[int, list[int]]]:
    """Drop duplicates and strings contained in other strings.

    Returns the surviving instance and a map from surviving index to the
    sorted original indices it covers (itself included).
    """
    raw = list(raw)
    if not raw:
        raise InstanceError("empty instance")
    if any(not s for s in raw):
        raise InstanceError("empty string")

    # first occurrence of each distinct string survives deduplication
    first: dict[str, int] = {}
    for i, s in enumerate(raw):
        first.setdefault(s, i)
    distinct = sorted(first.values())

    keep = []
    for i in distinct:
        s = raw[i]
        if not any(len(raw[j]) > len(s) and s in raw[j] for j in distinct):
            keep.append(i)

    survivors = [raw[i] for i in keep]
    mapping: dict[int, list[int]] = {v: [] for v in range(len(keep))}
    for i, s in enumerate(raw):
        for v, t in enumerate(survivors):
            if s in t:
                mapping[v].append(i)
                break
    return Instance(tuple(survivors), tuple(keep)), mapping


def max_overlap(a: str, b: str) -> int:
    """Largest z >= 0 with the length-z suffix of ``a`` equal to the length-z prefix of ``b``."""
    for z in range(min(len(a), len(b)), 0, -1):
        if a.endswith(b[:z]):
            return z
    return 0


@dataclass(frozen=True)
class OverlapGraph:
    """Complete digraph on the instance strings; ``w[i, j]`` is the overlap of i into j.

    Diagonal entries are -1 and never used.
    """

    strings: tuple[str, ...]
    w: np.ndarray

    @property
    def n(self) -> int:
        return len(self.strings)

    def weight(self, path: Sequence[int]) -> int:
        return int(sum(self.w[a, b] for a, b in zip(path, path[1:])))


def build_graph(inst: Instance) -> OverlapGraph:
    n = inst.n
    w = np.full((n, n), -1, dtype=np.int64)
    for i, a in enumerate(inst.strings):
        for j, b in enumerate(inst.strings):
            if i != j:
                w[i, j] = max_overlap(a, b)
    w.setflags(write=False)
    return OverlapGraph(inst.strings, w)


def is_simple(path: Sequence[int]) -> bool:
    return len(set(path)) == len(path)


def superstring_from_path(path: Sequence[int], g: OverlapGraph) -> str:
    """Merge the path's strings left to right, dropping each overlap once."""
    if not path:
        raise ValueError("empty path")
    if not is_simple(path):
        raise ValueError("not a simple path")
    parts = [g.strings[path[0]]]
    for prev, cur in zip(path, path[1:]):
        parts.append(g.strings[cur][g.w[prev, cur]:])
    return "".join(parts)
