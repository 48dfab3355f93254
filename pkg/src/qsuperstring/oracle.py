"""Brute-force ground truth and solution verification."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Sequence

from .overlap import Instance, preprocess
from .solution import Solution

MAX_ORACLE_N = 10


class OracleLimit(ValueError):
    pass


def _overlap_scan(a: str, b: str) -> int:
    best = 0
    for z in range(1, min(len(a), len(b)) + 1):
        if a[len(a) - z:] == b[:z]:
            best = z
    return best


def _merge(strings: Sequence[str], order: Sequence[int]) -> str:
    t = strings[order[0]]
    for i in order[1:]:
        s = strings[i]
        t += s[_overlap_scan(t, s):]
    return t


def brute_force(inst: Instance) -> Solution:
    """Try every vertex order; shortest superstring wins, then lexicographically smallest."""
    n = inst.n
    if n > MAX_ORACLE_N:
        raise OracleLimit(f"oracle limit: n={n} > {MAX_ORACLE_N}")
    s = inst.strings
    ov = [[_overlap_scan(a, b) if i != j else 0 for j, b in enumerate(s)] for i, a in enumerate(s)]

    best_w, orders = -1, []
    for order in permutations(range(n)):
        w = sum(ov[a][b] for a, b in zip(order, order[1:]))
        if w > best_w:
            best_w, orders = w, [order]
        elif w == best_w:
            orders.append(order)
    t, order = min((_merge(s, o), o) for o in orders)
    return Solution(list(order), inst.total_length - len(t), t, "brute")


@dataclass
class VerifyReport:
    all_contained: bool
    length_identity: bool
    is_simple_path: bool
    optimal: bool | None = None

    @property
    def ok(self) -> bool:
        return (self.all_contained and self.length_identity and self.is_simple_path
                and self.optimal is not False)


def verify(sol: Solution, original: Sequence[str], inst: Instance | None = None,
           reference: Solution | None = None) -> VerifyReport:
    """Check containment of every original string, |t| = total - weight and path simplicity.

    ``inst`` defaults to the preprocessed ``original``; optimality is judged
    only against a supplied ``reference``.
    """
    if inst is None:
        inst, _ = preprocess(original)
    t = sol.superstring or ""
    return VerifyReport(
        all_contained=all(s in t for s in original),
        length_identity=len(t) == inst.total_length - sol.weight,
        is_simple_path=(len(set(sol.path)) == len(sol.path) == inst.n
                        and all(0 <= v < inst.n for v in sol.path)),
        optimal=None if reference is None else len(t) == len(reference.superstring),
    )
