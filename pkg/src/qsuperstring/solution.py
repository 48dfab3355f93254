from __future__ import annotations

import threading
from contextlib import contextmanager
from dataclasses import dataclass, field

LEVELS = ("nested", "middle", "final")


class QueryLedger:
    """Charged quantum queries per search level, plus classical bookkeeping.

    Charges are multiplied by the current scale, which nested searches raise
    while accounting for the oracle calls of an enclosing search.
    """

    def __init__(self):
        self.per_level = {lvl: 0 for lvl in LEVELS}
        self.classical_lookups = 0
        self.classical_entries = 0
        self._scale = 1
        self._lock = threading.Lock()

    @property
    def quantum_queries(self) -> int:
        return sum(self.per_level.values())

    def charge(self, level: str, amount: int) -> None:
        with self._lock:
            self.per_level[level] += amount * self._scale

    def lookups(self, count: int) -> None:
        with self._lock:
            self.classical_lookups += count

    @contextmanager
    def scaled(self, factor: int):
        prev = self._scale
        self._scale = prev * factor
        try:
            yield self
        finally:
            self._scale = prev

    @contextmanager
    def muted(self):
        with self.scaled(0):
            yield self

    def merge(self, other: "QueryLedger") -> None:
        with self._lock:
            for lvl in LEVELS:
                self.per_level[lvl] += other.per_level[lvl]
            self.classical_lookups += other.classical_lookups
            self.classical_entries += other.classical_entries

    def snapshot(self) -> dict:
        return {
            "quantum_charged": self.quantum_queries,
            "classical_entries": self.classical_entries,
            "classical_lookups": self.classical_lookups,
            "per_level": dict(self.per_level),
        }


@dataclass
class Solution:
    path: list[int]
    weight: int
    superstring: str
    mode: str
    ledger: QueryLedger = field(default_factory=QueryLedger, repr=False)
    fallback: bool = False

    @property
    def length(self) -> int:
        return len(self.superstring)
