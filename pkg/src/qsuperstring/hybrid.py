"""Classical preprocessing plus three nested maximum-finding searches.

Every search at level ``final``/``middle``/``nested`` over a vertex set S
with endpoints (v, u) ranges over splits (S', y): S' a fixed-size subset of
S, y in S' the shared pivot, with candidate value

    value(S', v, y) + value((S - S') | {y}, y, u)

where ``value`` is the next level down (the Step-1 DP table below
``nested``).  Infeasible candidates carry -inf and simply lose.

:func:`nested_level` and :func:`middle_level` evaluate one search at a time
and serve as the reference path.  :func:`solve` computes the same searches
for every (S, v, u) a layer at a time with numpy, then charges the ledger
by walking the winning candidates.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import product
from math import floor

import numpy as np

from .dp import (
    NEG_INF,
    DpTable,
    Layer,
    LayeredTable,
    as_weight,
    held_karp_full,
    reconstruct_path,
    require_layers,
    split_candidates,
    split_search_layer,
    step1,
)
from .overlap import Instance, OverlapGraph, build_graph, superstring_from_path
from .qmax import QMaxConfig, boosted_qmax, charge, failed_pick
from .solution import QueryLedger, Solution
from .subsets import (
    full_mask,
    members_matrix,
    popcount,
    split_space_size,
    split_unrank,
    subsets_of_size,
)

log = logging.getLogger(__name__)

ALPHA = 0.055
MIN_RECURSION_N = 8
MAX_HYBRID_N = 16
CHILD = {"final": "middle", "middle": "nested"}


class SearchFailed(RuntimeError):
    """No feasible path survived the (noisy) searches."""


def middle_split(s: int) -> int:
    return max(1, s // 2)


def nested_split(s: int, alpha: float) -> int:
    # tolerance keeps e.g. 0.945 * 200 from flooring to 188
    return max(1, floor((1 - alpha) * s + 1e-9))


@dataclass(frozen=True)
class LevelPlan:
    """Segment sizes of the three-level split of n vertices.

    ``final``, ``middle[s]`` and ``nested[s]`` are (first, second) segment
    sizes; the second segment shares the pivot with the first, hence the +1.
    """

    n: int
    alpha: float
    final: tuple[int, int]
    middle: dict[int, tuple[int, int]] = field(hash=False)
    nested: dict[int, tuple[int, int]] = field(hash=False)
    leaf_threshold: int
    fallback: bool

    def middle_split(self, s: int) -> int:
        return middle_split(s)

    def nested_split(self, s: int) -> int:
        return nested_split(s, self.alpha)

    def split(self, level: str, s: int) -> int:
        if level == "nested":
            return nested_split(s, self.alpha)
        return middle_split(s)

    def space_size(self, level: str, s: int) -> int:
        return split_space_size(s, self.split(level, s))


def plan_levels(n: int, alpha: float = ALPHA) -> LevelPlan:
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0 <= alpha < 1:
        raise ValueError("alpha must lie in [0, 1)")
    m1 = middle_split(n)
    final = (m1, n - m1 + 1)
    middle = {s: (middle_split(s), s - middle_split(s) + 1) for s in sorted(set(final))}
    nested_sizes = sorted({x for pair in middle.values() for x in pair})
    nested = {s: (nested_split(s, alpha), s - nested_split(s, alpha) + 1) for s in nested_sizes}
    leaf = max(x for pair in nested.values() for x in pair)
    fallback = n < MIN_RECURSION_N or leaf >= n
    return LevelPlan(n, alpha, final, middle, nested, n if fallback else leaf, fallback)


def _split_keys(idx: int, S: int, a: int, v: int, u: int):
    sub, y = split_unrank(idx, S, a)
    rest = (S & ~sub) | (1 << y)
    return (sub, v, y), (rest, y, u)


# -- one search at a time ----------------------------------------------------

def nested_level(S, v, u, table: DpTable, plan: LevelPlan, ledger: QueryLedger,
                 cfg: QMaxConfig, *, reps=None, rng=None):
    """Innermost search over DP-table leaves; returns (weight, (leaf1, leaf2)) or (NEG_INF, None)."""
    s = popcount(S)
    a = plan.nested_split(s)
    require_layers(table, a, s - a + 1)

    def evaluate(i):
        k1, k2 = _split_keys(i, S, a, v, u)
        return table.lookup(*k1) + table.lookup(*k2)

    reps = reps if reps is not None else cfg.reps(plan.n)
    idx, val = boosted_qmax(split_space_size(s, a), evaluate, reps, ledger, cfg,
                            level="nested", rng=rng)
    ledger.lookups(2 * split_space_size(s, a))
    if val == NEG_INF:
        return NEG_INF, None
    return as_weight(val), _split_keys(idx, S, a, v, u)


def middle_level(S, v, u, table: DpTable, plan: LevelPlan, ledger: QueryLedger,
                 cfg: QMaxConfig, *, reps=None, rng=None, memo=None):
    """Middle search whose candidates are pairs of nested searches.

    Returns (weight, four leaf keys) or (NEG_INF, None).  Nested results are
    memoised in ``memo``; their query cost is charged once per oracle call
    of this search, scaled by its own charge.
    """
    s = popcount(S)
    a = plan.middle_split(s)
    reps = reps if reps is not None else cfg.reps(plan.n)
    memo = {} if memo is None else memo

    def nested(key):
        if key not in memo:
            with ledger.muted():
                memo[key] = nested_level(*key, table, plan, ledger, cfg, reps=reps, rng=rng)
        return memo[key]

    def evaluate(i):
        k1, k2 = _split_keys(i, S, a, v, u)
        return nested(k1)[0] + nested(k2)[0]

    space = split_space_size(s, a)
    idx, val = boosted_qmax(space, evaluate, reps, ledger, cfg, level="middle", rng=rng)
    k1, k2 = _split_keys(idx, S, a, v, u)
    with ledger.scaled(reps * charge(space)):
        for key in (k1, k2):
            sz = popcount(key[0])
            ledger.charge("nested", reps * charge(plan.space_size("nested", sz)))
    if val == NEG_INF:
        return NEG_INF, None
    (_, leaves1), (_, leaves2) = nested(k1), nested(k2)
    return as_weight(val), (*leaves1, *leaves2)


# -- whole layers at a time --------------------------------------------------

def _inject_failures(layer: Layer, child: LayeredTable, s: int, a: int, n: int,
                     reps: int, cfg: QMaxConfig, rng: np.random.Generator) -> int:
    """Replace the answer of every search whose ``reps`` runs all failed."""
    if cfg.fail_prob == 0:
        return 0
    K = len(layer.masks)
    mem = members_matrix(layer.masks, n, s)
    all_failed = rng.random((K, s, s)) < cfg.fail_prob ** reps
    hits = np.argwhere(all_failed)
    for k, i, j in hits:
        S, v, u = int(layer.masks[k]), int(mem[k, i]), int(mem[k, j])
        vals = split_candidates(child, S, s, a, v, u, n)
        idx = failed_pick(vals, reps, rng)
        layer.values[k, v, u] = vals[idx]
        layer.aux[k, v, u] = idx
    return len(hits)


@dataclass
class _Searches:
    plan: LevelPlan
    table: DpTable
    stores: dict[str, LayeredTable]
    reps: dict[str, int]


def _build_searches(g: OverlapGraph, plan: LevelPlan, cfg: QMaxConfig,
                    ledger: QueryLedger, rng: np.random.Generator) -> _Searches:
    n = g.n
    table = step1(g, plan.leaf_threshold)
    ledger.classical_entries = table.entry_count
    reps = {"nested": cfg.reps(n), "middle": cfg.reps(n), "final": cfg.final_reps(n)}
    stores: dict[str, LayeredTable] = {}
    child: LayeredTable = table
    sizes = {"nested": list(plan.nested), "middle": list(plan.middle), "final": [n]}
    for level in ("nested", "middle", "final"):
        store = LayeredTable(n)
        for s in sizes[level]:
            a = plan.split(level, s)
            masks = subsets_of_size(n, s)
            values, arg, reads = split_search_layer(child, masks, s, a, n)
            ledger.lookups(reads)
            layer = Layer(masks, values, arg)
            if cfg.noisy:
                failed = _inject_failures(layer, child, s, a, n, reps[level], cfg, rng)
                log.debug("%s searches on %d-sets: %d failed", level, s, failed)
            store.add_layer(s, layer)
        stores[level] = store
        child = store
    return _Searches(plan, table, stores, reps)


def _walk(sr: _Searches, ledger: QueryLedger, level: str, S: int, v: int, u: int) -> list:
    """Charge one search and, scaled by its cost, one oracle call's worth of
    inner searches; returns the DP-table leaf keys of the chosen candidate."""
    s = popcount(S)
    a = sr.plan.split(level, s)
    own = sr.reps[level] * charge(split_space_size(s, a))
    ledger.charge(level, own)
    idx = sr.stores[level].aux(S, v, u)
    k1, k2 = _split_keys(idx, S, a, v, u)
    if level == "nested":
        return [k1, k2]
    with ledger.scaled(own):
        return _walk(sr, ledger, CHILD[level], *k1) + _walk(sr, ledger, CHILD[level], *k2)


def join_paths(parts: list[list[int]]) -> list[int]:
    """Concatenate paths that share their boundary vertex."""
    path = list(parts[0])
    for p in parts[1:]:
        if path[-1] != p[0]:
            raise ValueError("segments do not share a pivot")
        path.extend(p[1:])
    return path


def solve(inst: Instance, cfg: QMaxConfig = QMaxConfig(), alpha: float = ALPHA) -> Solution:
    """Exact (or simulated-noisy) hybrid solve of a preprocessed instance."""
    n = inst.n
    if n > MAX_HYBRID_N:
        raise ValueError(f"hybrid solver limited to n <= {MAX_HYBRID_N}")
    g = build_graph(inst)
    plan = plan_levels(n, alpha)
    if plan.fallback:
        sol = held_karp_full(g)
        sol.mode, sol.fallback = "hybrid", True
        return sol

    ledger = QueryLedger()
    rng = cfg.make_rng()
    sr = _build_searches(g, plan, cfg, ledger, rng)
    V = full_mask(n)
    top = sr.stores["final"].layers[n].values[0]

    best, best_leaves = NEG_INF, None
    for v, u in product(range(n), repeat=2):
        leaves = _walk(sr, ledger, "final", V, v, u)
        if top[v, u] > best:
            best, best_leaves = top[v, u], leaves
    if best == NEG_INF:
        raise SearchFailed("every endpoint pair returned an infeasible candidate")

    path = join_paths([reconstruct_path(sr.table, *key) for key in best_leaves])
    if sorted(path) != list(range(n)) or g.weight(path) != best:
        raise RuntimeError("recomposed path disagrees with the search value")
    return Solution(path, as_weight(best), superstring_from_path(path, g), "hybrid", ledger)
