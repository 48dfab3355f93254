"""Simulated Durr-Hoyer maximum finding with query accounting.

Candidates are evaluated classically; the ledger is charged what the
quantum routine would spend, ``ceil(sqrt(N))`` queries per run.  In noisy
mode each run independently fails with probability ``fail_prob`` and then
reports a uniformly random non-optimal index.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from math import isqrt
from typing import Callable

import numpy as np

from .solution import QueryLedger


class Mode(str, enum.Enum):
    EXACT = "exact"
    NOISY = "noisy"


@dataclass(frozen=True)
class QMaxConfig:
    mode: Mode = Mode.EXACT
    fail_prob: float = 0.1
    rng_seed: int = 0
    boost_reps: int | None = None  # None: 2n for the nested and middle levels
    boost_final: bool = False

    def __post_init__(self):
        if not 0.0 <= self.fail_prob <= 1.0:
            raise ValueError("fail_prob must lie in [0, 1]")
        if self.boost_reps is not None and self.boost_reps < 1:
            raise ValueError("boost_reps must be >= 1")

    @property
    def noisy(self) -> bool:
        return self.mode == Mode.NOISY

    def reps(self, n: int) -> int:
        return self.boost_reps if self.boost_reps is not None else 2 * n

    def final_reps(self, n: int) -> int:
        return self.reps(n) if self.boost_final else 1

    def make_rng(self) -> np.random.Generator:
        return np.random.default_rng(self.rng_seed)


def charge(space_size: int) -> int:
    """ceil(sqrt(N)) queries for one maximum-finding run over N items."""
    r = isqrt(space_size)
    return r if r * r == space_size else r + 1


def argmax_first(values: np.ndarray) -> int:
    return int(np.argmax(values))


def noisy_pick(values: np.ndarray, reps: int, rng: np.random.Generator, fail_prob: float) -> int:
    """Best index over ``reps`` independent noisy runs."""
    best = argmax_first(values)
    failed = rng.random(reps) < fail_prob
    if not failed.all():
        return best
    return failed_pick(values, reps, rng)


def failed_pick(values: np.ndarray, reps: int, rng: np.random.Generator) -> int:
    """Outcome when every one of ``reps`` runs failed."""
    top = values.max()
    wrong = np.flatnonzero(values < top)
    if len(wrong) == 0:
        return argmax_first(values)
    picks = np.sort(rng.choice(wrong, size=reps))
    return int(picks[np.argmax(values[picks])])


def _evaluate(space_size: int, evaluator: Callable[[int], float]) -> np.ndarray:
    if space_size < 1:
        raise ValueError("empty search space")
    return np.array([evaluator(i) for i in range(space_size)], dtype=np.float64)


def boosted_qmax(
    space_size: int,
    evaluator: Callable[[int], float],
    reps: int,
    ledger: QueryLedger,
    cfg: QMaxConfig,
    *,
    level: str = "final",
    rng: np.random.Generator | None = None,
) -> tuple[int, float]:
    """Run maximum finding ``reps`` times and keep the best answer."""
    if reps < 1:
        raise ValueError("reps must be >= 1")
    values = _evaluate(space_size, evaluator)
    ledger.charge(level, reps * charge(space_size))
    if cfg.noisy:
        rng = rng if rng is not None else cfg.make_rng()
        idx = noisy_pick(values, reps, rng, cfg.fail_prob)
    else:
        idx = argmax_first(values)
    return idx, float(values[idx])


def qmax(
    space_size: int,
    evaluator: Callable[[int], float],
    ledger: QueryLedger,
    cfg: QMaxConfig,
    *,
    level: str = "final",
    rng: np.random.Generator | None = None,
) -> tuple[int, float]:
    """A single maximum-finding run; returns (index, value)."""
    return boosted_qmax(space_size, evaluator, 1, ledger, cfg, level=level, rng=rng)
