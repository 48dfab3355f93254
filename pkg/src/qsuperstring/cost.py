"""Exact accounting of classical table size and charged quantum queries.

``classical_cost`` and ``quantum_cost`` predict, to the unit, what a run of
:func:`qsuperstring.hybrid.solve` records.  Growth exponents are reported
twice: for the exact counts, and for their exponential cores (polynomial
factors stripped, the quantity an O*-bound speaks about).
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from math import comb, log2

from .hybrid import ALPHA, plan_levels
from .qmax import charge

log = logging.getLogger(__name__)

TARGET_EXPONENT = log2(1.728)


def binomial(n: int, r: int) -> int:
    if r < 0 or r > n:
        log.warning("binomial(%d, %d) outside 0 <= r <= n, using 0", n, r)
        return 0
    return comb(n, r)


def entries_up_to(n: int, threshold: int) -> int:
    """(S, v, u) entries with v, u in S over all |S| <= threshold."""
    return sum(binomial(n, i) * i * i for i in range(1, threshold + 1))


def classical_cost(n: int, alpha: float = ALPHA) -> int:
    return entries_up_to(n, plan_levels(n, alpha).leaf_threshold)


def _space(s: int, a: int) -> int:
    return binomial(s, a) * a


def level_costs(n: int, alpha: float = ALPHA, reps: int | None = None,
                final_reps: int = 1) -> dict[str, int]:
    """Charged queries per level for a full solve.

    Per endpoint pair the final search costs R_f*q_f; each of its queries
    runs one middle search on each half, R_m*q_m(s); each middle query runs
    one nested search on each of its halves, R_n*q_n(s').
    """
    plan = plan_levels(n, alpha)
    R = 2 * n if reps is None else reps
    m1, m2 = plan.final
    per_final = final_reps * charge(_space(n, m1))

    middle_sum = 0
    nested_sum = 0
    for s in (m1, m2):
        a, b = plan.middle[s]
        q_mid = R * charge(_space(s, a))
        inner = sum(R * charge(_space(t, plan.nested[t][0])) for t in (a, b))
        middle_sum += q_mid
        nested_sum += q_mid * inner

    pairs = n * n
    return {
        "final": pairs * per_final,
        "middle": pairs * per_final * middle_sum,
        "nested": pairs * per_final * nested_sum,
    }


def quantum_cost(n: int, alpha: float = ALPHA, reps: int | None = None,
                 final_reps: int = 1) -> int:
    plan = plan_levels(n, alpha)
    if plan.fallback:
        log.warning("n=%d: degenerate plan, reporting the classical fallback cost", n)
        return entries_up_to(n, n)
    return sum(level_costs(n, alpha, reps, final_reps).values())


def classical_core(n: int, alpha: float = ALPHA) -> int:
    """Number of subsets Step 1 tabulates."""
    t = plan_levels(n, alpha).leaf_threshold
    return sum(binomial(n, i) for i in range(1, t + 1))


def quantum_core_log2(n: int, alpha: float = ALPHA) -> float:
    """log2 of sqrt(C(n,m1) * C(s,s/2) * C(s', a')) along the costliest branch."""
    plan = plan_levels(n, alpha)
    m1 = plan.final[0]
    mid = max(binomial(s, a) for s, (a, _) in plan.middle.items())
    nest = max(binomial(s, a) for s, (a, _) in plan.nested.items())
    return 0.5 * (log2(binomial(n, m1)) + log2(mid) + log2(nest))


@dataclass
class CostReport:
    n: int
    alpha: float
    classical_entries: int
    quantum_charged: int
    classical_exponent: float
    quantum_exponent: float
    classical_core_exponent: float
    quantum_core_exponent: float
    degenerate: bool

    @property
    def gap(self) -> float:
        return abs(self.classical_exponent - self.quantum_exponent)

    @property
    def core_gap(self) -> float:
        return abs(self.classical_core_exponent - self.quantum_core_exponent)

    def balanced(self, tol: float = 0.01) -> bool:
        return self.core_gap < tol


def cost_report(n: int, alpha: float = ALPHA) -> CostReport:
    plan = plan_levels(n, alpha)
    c = classical_cost(n, alpha)
    q = quantum_cost(n, alpha)
    return CostReport(
        n, alpha, c, q,
        classical_exponent=log2(c) / n,
        quantum_exponent=log2(q) / n,
        classical_core_exponent=log2(classical_core(n, alpha)) / n,
        quantum_core_exponent=quantum_core_log2(n, alpha) / n,
        degenerate=plan.fallback,
    )


def balance_report(n_max: int, alpha: float = ALPHA, step: int = 1,
                   n_min: int = 8) -> list[CostReport]:
    if n_max < 8:
        raise ValueError("n_max must be >= 8")
    return [cost_report(n, alpha) for n in range(n_min, n_max + 1, step)]
