import itertools
import random

import pytest

from qsuperstring.generate import random_instance

DEMO = ("ABCD", "CDEF", "EFGH")


def scan_overlap(a, b):
    """Ascending scan over every z; keeps the last match."""
    best = 0
    for z in range(0, min(len(a), len(b)) + 1):
        if a[len(a) - z:] == b[:z]:
            best = z
    return best


def brute_l(strings, S, v, u):
    """Max overlap sum over simple paths through exactly S from v to u, by permutation."""
    verts = sorted(S)
    if v not in S or u not in S:
        return float("-inf")
    best = float("-inf")
    for perm in itertools.permutations(verts):
        if perm[0] != v or perm[-1] != u:
            continue
        w = sum(scan_overlap(strings[a], strings[b]) for a, b in zip(perm, perm[1:]))
        best = max(best, w)
    return best


def brute_best_weight(strings):
    n = len(strings)
    ov = [[scan_overlap(a, b) for b in strings] for a in strings]
    return max(sum(ov[a][b] for a, b in zip(p, p[1:])) for p in itertools.permutations(range(n)))


def instances(count, n_lo, n_hi, seed, k_lo=2, k_hi=8, alphabets=("AB", "ACGT")):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(n_lo, n_hi)
        k = rng.randint(k_lo, k_hi)
        alpha = rng.choice(alphabets)
        if len(alpha) ** k < n:
            continue
        out.append(random_instance(n, k, alpha, rng.randrange(1 << 30)))
    return out


@pytest.fixture
def demo():
    from qsuperstring.overlap import Instance
    return Instance(DEMO)


ACCEPTANCE_LOG = []


def record(number, title, ok, detail=""):
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {title}" + (f" ({detail})" if detail else "")
    ACCEPTANCE_LOG.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LOG:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LOG, key=lambda s: int(s.split()[2].rstrip(":").split("-")[0])):
            terminalreporter.write_line(line)
