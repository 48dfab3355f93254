"""The L/F subset dynamic program over (S, start, end) states.

``L(S, v, u)`` is the heaviest simple path through exactly the vertices of
``S`` from ``v`` to ``u``; ``F`` is recovered from predecessor links.
Weights are float64 so that ``-inf`` acts as a saturating NEG_INF sentinel;
finite values are exact integers.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .overlap import OverlapGraph, superstring_from_path
from .solution import Solution
from .subsets import (
    check_n,
    full_mask,
    members,
    popcount,
    split_space_size,
    split_unrank,
    local_combos,
    members_matrix,
    subsets_of_size,
)

NEG_INF = float("-inf")
NONE = -1
MAX_TABLE_N = 16
MAX_ROW_INDEX_N = 24


def as_weight(x) -> int | float:
    """Convert a stored value to an int, or NEG_INF."""
    return NEG_INF if x == NEG_INF else int(x)


@dataclass
class Layer:
    """All subsets of one size: sorted masks, values[row, v, u], aux[row, v, u]."""

    masks: np.ndarray
    values: np.ndarray
    aux: np.ndarray


class LayeredTable:
    """Values keyed by (mask, v, u), stored densely per subset size."""

    def __init__(self, n: int):
        check_n(n)
        if n > MAX_ROW_INDEX_N:
            raise ValueError(f"dense tables limited to n <= {MAX_ROW_INDEX_N}")
        self.n = n
        self.row_of = np.full(1 << n, -1, dtype=np.int64)
        self.layers: dict[int, Layer] = {}

    def add_layer(self, size: int, layer: Layer) -> None:
        self.row_of[layer.masks] = np.arange(len(layer.masks))
        self.layers[size] = layer

    def has(self, mask: int) -> bool:
        p = popcount(mask)
        return p in self.layers and self.row_of[mask] >= 0

    def value(self, mask: int, v: int, u: int) -> float:
        """Stored value; NEG_INF for endpoints outside ``mask``. KeyError if absent."""
        layer = self.layers.get(popcount(mask))
        if layer is None:
            raise KeyError(mask)
        return float(layer.values[self.row_of[mask], v, u])

    def aux(self, mask: int, v: int, u: int) -> int:
        return int(self.layers[popcount(mask)].aux[self.row_of[mask], v, u])


class DpTable(LayeredTable):
    """Memo of L weights and predecessors.

    Layers 1..threshold are materialised by :func:`step1`; anything else
    requested through :func:`get_l` is memoised per entry in ``extra``.
    """

    def __init__(self, g: OverlapGraph, threshold: int = 0):
        super().__init__(g.n)
        self.graph = g
        self.threshold = threshold
        self.extra: dict[tuple[int, int, int], tuple[float, int]] = {}

    def lookup(self, mask: int, v: int, u: int) -> float:
        """L(mask, v, u) if known, NEG_INF when an endpoint lies outside the subset."""
        if not (mask >> v) & 1 or not (mask >> u) & 1:
            return NEG_INF
        if popcount(mask) in self.layers:
            return self.value(mask, v, u)
        try:
            return self.extra[mask, v, u][0]
        except KeyError:
            raise LookupError("table too shallow") from None

    def predecessor(self, mask: int, v: int, u: int) -> int:
        if popcount(mask) in self.layers:
            return self.aux(mask, v, u)
        return self.extra[mask, v, u][1]

    @property
    def entry_count(self) -> int:
        """Number of (S, v, u) entries with v, u in S."""
        stored = sum(len(layer.masks) * p * p for p, layer in self.layers.items())
        return stored + len(self.extra)


def get_l(S: int, v: int, u: int, table: DpTable, g: OverlapGraph | None = None) -> float:
    """Memoised recursion: L(S,v,u) = max over y in S-{u} of L(S-{u},v,y) + w(y,u)."""
    if not (S >> v) & 1 or not (S >> u) & 1:
        raise ValueError("endpoint outside subset")
    g = g or table.graph
    try:
        return table.lookup(S, v, u)
    except LookupError:
        pass

    if S == 1 << v:
        table.extra[S, v, u] = (0.0, NONE)
        return 0.0
    best, pred = NEG_INF, NONE
    rest = S & ~(1 << u)
    if (rest >> v) & 1:
        for y in members(rest):
            cand = get_l(rest, v, y, table, g) + g.w[y, u]
            if cand > best:
                best, pred = cand, y
    table.extra[S, v, u] = (best, pred)
    return best


def step1(g: OverlapGraph, threshold: int) -> DpTable:
    """Fill every (S, v, u) with |S| <= threshold, bottom-up by subset size."""
    n = g.n
    if not 1 <= threshold <= n:
        raise ValueError(f"threshold must lie in [1, {n}]")
    if n > MAX_TABLE_N:
        raise ValueError(f"DP table limited to n <= {MAX_TABLE_N}")
    table = DpTable(g, threshold)
    w = g.w.astype(np.float64)
    np.fill_diagonal(w, NEG_INF)

    masks = subsets_of_size(n, 1)
    vals = np.full((n, n, n), NEG_INF)
    vals[np.arange(n), np.arange(n), np.arange(n)] = 0.0
    table.add_layer(1, Layer(masks, vals, np.full((n, n, n), NONE, dtype=np.int8)))

    for p in range(2, threshold + 1):
        masks = subsets_of_size(n, p)
        prev = table.layers[p - 1].values
        vals = np.full((len(masks), n, n), NEG_INF)
        pred = np.full((len(masks), n, n), NONE, dtype=np.int8)
        for u in range(n):
            sel = np.nonzero((masks >> u) & 1)[0]
            rows = table.row_of[masks[sel] ^ (1 << u)]
            # cand[k, v, y] = L(S - {u}, v, y) + w(y, u)
            cand = prev[rows] + w[:, u][None, None, :]
            best_y = cand.argmax(axis=2)
            best = np.take_along_axis(cand, best_y[..., None], axis=2)[..., 0]
            vals[sel, :, u] = best
            pred[sel, :, u] = np.where(best == NEG_INF, NONE, best_y)
        table.add_layer(p, Layer(masks, vals, pred))
    return table


def reconstruct_path(table: DpTable, S: int, v: int, u: int) -> list[int]:
    """Follow predecessor links from u back to the singleton {v}."""
    if table.lookup(S, v, u) == NEG_INF:
        raise ValueError("infeasible path requested")
    path = [u]
    while S != 1 << v:
        y = table.predecessor(S, v, u)
        S &= ~(1 << u)
        u = y
        path.append(u)
    path.reverse()
    return path


def split_eval(S: int, v: int, u: int, r: int, table: DpTable) -> float:
    """max over r-subsets S' of S and y in S' of L(S',v,y) + L((S-S')+{y},y,u)."""
    m = popcount(S)
    if not 1 <= r <= m:
        raise ValueError("split size out of range")
    best = NEG_INF
    for idx in range(split_space_size(m, r)):
        sub, y = split_unrank(idx, S, r)
        rest = (S & ~sub) | (1 << y)
        val = table.lookup(sub, v, y) + table.lookup(rest, y, u)
        best = max(best, val)
    return best


# -- batch split evaluation --------------------------------------------------

# elements per broadcast block
BLOCK = 1 << 22


def require_layers(table: LayeredTable, *sizes: int) -> None:
    if any(s not in table.layers for s in sizes):
        raise LookupError("table too shallow")


def split_pattern(s: int, a: int):
    """Local layout of the split space of an s-set: subset bits, subset id, pivot position."""
    combos = local_combos(s, a)
    bits = np.zeros((len(combos), s), dtype=np.int64)
    bits[np.repeat(np.arange(len(combos)), a), combos.ravel()] = 1
    combo_of = np.repeat(np.arange(len(combos)), a)
    pivot = combos.ravel()
    return bits, combo_of, pivot


def candidate_keys(masks, mem, bits, combo_of, pivot):
    """Global masks of both segments and the pivot vertex, each shaped (K, C)."""
    pow2 = np.left_shift(np.int64(1), mem)
    sub = (pow2 @ bits.T)[:, combo_of]
    y = mem[:, pivot]
    rest = (masks[:, None] & ~sub) | np.left_shift(np.int64(1), y)
    return sub, rest, y


def split_search_layer(child: LayeredTable, masks: np.ndarray, s: int, a: int, n: int):
    """Best split of every (S, v, u), S in ``masks`` (all of size s), first segment size a.

    Returns (values, arg, reads): values[k, v, u] is the split maximum and
    arg[k, v, u] the smallest flat split index attaining it (see
    :mod:`qsuperstring.subsets`); ``reads`` counts table reads.
    """
    b = s - a + 1
    require_layers(child, a, b)
    first_vals, second_vals = child.layers[a].values, child.layers[b].values
    bits, combo_of, pivot = split_pattern(s, a)
    C = len(combo_of)
    K = len(masks)
    mem_all = members_matrix(masks, n, s)

    values = np.full((K, n, n), NEG_INF)
    arg = np.zeros((K, n, n), dtype=np.int64)
    per_set = C * s * s
    kc = max(1, BLOCK // per_set)
    cc = C if per_set <= BLOCK else max(1, BLOCK // (s * s))
    for k0 in range(0, K, kc):
        mem = mem_all[k0:k0 + kc]
        sub, rest, y = candidate_keys(masks[k0:k0 + kc], mem, bits, combo_of, pivot)
        r1, r2 = child.row_of[sub], child.row_of[rest]
        kk = len(mem)
        best = np.full((kk, s, s), NEG_INF)
        best_arg = np.zeros((kk, s, s), dtype=np.int64)
        for c0 in range(0, C, cc):
            cs = slice(c0, c0 + cc)
            # first[k, c, i] = value(S', m_i, y); second[k, c, j] = value(rest, y, m_j)
            first = first_vals[r1[:, cs, None], mem[:, None, :], y[:, cs, None]]
            second = second_vals[r2[:, cs, None], y[:, cs, None], mem[:, None, :]]
            total = first[:, :, :, None] + second[:, :, None, :]
            am = total.argmax(axis=1)
            mv = np.take_along_axis(total, am[:, None], axis=1)[:, 0]
            better = mv > best
            best = np.where(better, mv, best)
            best_arg = np.where(better, am + c0, best_arg)
        rows = np.arange(k0, k0 + kk)[:, None, None]
        values[rows, mem[:, :, None], mem[:, None, :]] = best
        arg[rows, mem[:, :, None], mem[:, None, :]] = best_arg
    return values, arg, K * s * s * C * 2


def split_candidates(child: LayeredTable, S: int, s: int, a: int, v: int, u: int, n: int):
    """Values of every split candidate of one (S, v, u), indexed by flat split index."""
    masks = np.array([S], dtype=np.int64)
    bits, combo_of, pivot = split_pattern(s, a)
    sub, rest, y = candidate_keys(masks, members_matrix(masks, n, s), bits, combo_of, pivot)
    b = s - a + 1
    first = child.layers[a].values[child.row_of[sub[0]], v, y[0]]
    second = child.layers[b].values[child.row_of[rest[0]], y[0], u]
    return first + second


def held_karp_full(g: OverlapGraph) -> Solution:
    """Maximum-weight Hamiltonian path from the full O*(2^n) table.

    Ties go to the smallest (v, u) endpoint pair.
    """
    table = step1(g, g.n)
    V = full_mask(g.n)
    top = table.layers[g.n].values[table.row_of[V]]
    best, bv, bu = NEG_INF, 0, 0
    for v, u in product(range(g.n), repeat=2):
        if top[v, u] > best:
            best, bv, bu = top[v, u], v, u
    path = reconstruct_path(table, V, bv, bu)
    sol = Solution(path, as_weight(best), superstring_from_path(path, g), "classical")
    sol.ledger.classical_entries = table.entry_count
    return sol
