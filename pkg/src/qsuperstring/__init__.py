"""Exact shortest-superstring solvers: subset DP, brute force, and a
classical/quantum hybrid with simulated maximum finding and query accounting."""
from .dp import NEG_INF, held_karp_full
from .hybrid import plan_levels, solve
from .oracle import brute_force, verify
from .overlap import Instance, build_graph, preprocess
from .qmax import Mode, QMaxConfig
from .solution import QueryLedger, Solution

__all__ = [
    "NEG_INF", "Instance", "Mode", "QMaxConfig", "QueryLedger", "Solution",
    "brute_force", "build_graph", "held_karp_full", "plan_levels", "preprocess",
    "solve", "verify",
]
