"""Command-line front end.

Exit codes: 0 ok, 1 search failure, 2 input error, 3 oracle limit, 4 size limit.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import cost
from .dp import MAX_TABLE_N, held_karp_full
from .formats import parse_fasta, parse_lines
from .generate import random_instance, random_strings
from .hybrid import ALPHA, MAX_HYBRID_N, SearchFailed, solve
from .oracle import MAX_ORACLE_N, brute_force
from .overlap import Instance, InstanceError, build_graph, preprocess
from .qmax import Mode, QMaxConfig
from .solution import Solution

EXIT_FAIL, EXIT_INPUT, EXIT_ORACLE, EXIT_SIZE = 1, 2, 3, 4
CSV_COLUMNS = ["n", "alpha", "trial", "seed", "opt_weight", "classical_entries",
               "quantum_charged", "predicted_quantum", "match"]


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _emit(text: str, out: str | None) -> None:
    if out:
        try:
            Path(out).write_text(text)
        except OSError as exc:
            raise CliError(f"cannot write {out}: {exc}", EXIT_INPUT) from exc
    else:
        sys.stdout.write(text)


def _read(path: str | None) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}", EXIT_INPUT) from exc


def _qcfg(args) -> QMaxConfig:
    if not 0 < args.alpha < 1:
        raise CliError("--alpha must lie in (0, 1)", EXIT_INPUT)
    try:
        return QMaxConfig(
            mode=Mode.NOISY if args.noisy else Mode.EXACT,
            fail_prob=args.fail_prob,
            rng_seed=args.seed,
            boost_reps=args.boost_reps,
        )
    except ValueError as exc:
        raise CliError(str(exc), EXIT_INPUT) from exc


def run_mode(inst: Instance, mode: str, cfg: QMaxConfig, alpha: float) -> Solution:
    if mode == "brute":
        if inst.n > MAX_ORACLE_N:
            raise CliError(f"oracle limit: n={inst.n} > {MAX_ORACLE_N}", EXIT_ORACLE)
        return brute_force(inst)
    limit = MAX_TABLE_N if mode == "classical" else MAX_HYBRID_N
    if inst.n > limit:
        raise CliError(f"n={inst.n} exceeds the {mode} limit of {limit}; "
                       "split the input or use fewer fragments", EXIT_SIZE)
    if mode == "classical":
        return held_karp_full(build_graph(inst))
    try:
        return solve(inst, cfg, alpha)
    except SearchFailed as exc:
        raise CliError(str(exc), EXIT_FAIL) from exc


def result_json(sol: Solution, inst: Instance, raw_count: int, mode: str, alpha: float,
                seed: int) -> dict:
    snap = sol.ledger.snapshot()
    return {
        "superstring": sol.superstring,
        "length": sol.length,
        "path": [inst.origin[v] for v in sol.path],
        "weight": sol.weight,
        "mode": mode,
        "alpha": alpha,
        "seed": seed,
        "queries": {
            "quantum_charged": snap["quantum_charged"],
            "classical_entries": snap["classical_entries"],
            "per_level": snap["per_level"],
        },
        "filtered": sorted(set(range(raw_count)) - set(inst.origin)),
    }


def cmd_gen(args) -> None:
    try:
        strings = random_strings(args.n, args.k, args.alphabet, args.seed)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_INPUT) from exc
    _emit("".join(s + "\n" for s in strings), args.out)


def _prepare(raw: list[str]) -> Instance:
    try:
        inst, _ = preprocess(raw)
    except InstanceError as exc:
        raise CliError(str(exc), EXIT_INPUT) from exc
    return inst


def cmd_solve(args) -> None:
    cfg = _qcfg(args)
    try:
        raw = parse_lines(_read(args.input))
    except InstanceError as exc:
        raise CliError(f"malformed instance: {exc}", EXIT_INPUT) from exc
    inst = _prepare(raw)
    sol = run_mode(inst, args.mode, cfg, args.alpha)
    doc = result_json(sol, inst, len(raw), args.mode, args.alpha, args.seed)
    _emit(json.dumps(doc, indent=2) + "\n", args.out)


def cmd_assemble(args) -> None:
    cfg = _qcfg(args)
    try:
        records = parse_fasta(_read(args.input))
    except InstanceError as exc:
        raise CliError(f"malformed FASTA: {exc}", EXIT_INPUT) from exc
    raw = [seq for _, seq in records]
    inst, covers = preprocess(raw)
    sol = run_mode(inst, args.mode, cfg, args.alpha)
    doc = result_json(sol, inst, len(raw), args.mode, args.alpha, args.seed)
    owner = {i: v for v, idx in covers.items() for i in idx}
    doc["records"] = [
        {"id": rid, "index": i, "vertex": inst.origin.index(i) if i in inst.origin else None,
         "covered_by": inst.origin[owner[i]]}
        for i, (rid, _) in enumerate(records)
    ]
    _emit(json.dumps(doc, indent=2) + "\n", args.out)


def parse_range(text: str) -> list[int]:
    """'8,12' or '8-16' or '8-16:4' (inclusive); empty string gives []."""
    out: list[int] = []
    for part in filter(None, (p.strip() for p in text.split(","))):
        step = 1
        if ":" in part:
            part, st = part.split(":")
            step = int(st)
        if "-" in part:
            lo, hi = part.split("-")
            out.extend(range(int(lo), int(hi) + 1, step))
        else:
            out.append(int(part))
    return out


def bench_rows(ns: list[int], trials: int, cfg: QMaxConfig, alpha: float, k: int,
               alphabet: str, seed: int) -> list[dict]:
    rows = []
    for n in ns:
        if n > MAX_HYBRID_N:
            raise CliError(f"n={n} exceeds the hybrid limit of {MAX_HYBRID_N}", EXIT_SIZE)
        for trial in range(trials):
            row_seed = seed + 1000 * n + trial
            inst = random_instance(n, k, alphabet, row_seed)
            run_cfg = QMaxConfig(cfg.mode, cfg.fail_prob, row_seed, cfg.boost_reps, cfg.boost_final)
            try:
                sol = solve(inst, run_cfg, alpha)
            except SearchFailed:
                sol = None
            measured = sol.ledger if sol is not None else None
            predicted = cost.quantum_cost(n, alpha, cfg.boost_reps,
                                          cfg.final_reps(n))
            row = {"n": n, "alpha": alpha, "trial": trial, "seed": row_seed,
                   "opt_weight": sol.weight if sol else "",
                   "classical_entries": measured.classical_entries if sol else "",
                   "quantum_charged": measured.quantum_queries if sol else "",
                   "predicted_quantum": predicted}
            if sol is None:
                row["match"] = False
            elif sol.fallback:
                row["match"] = measured.quantum_queries == 0 and measured.classical_entries == predicted
            else:
                row["match"] = (measured.quantum_queries == predicted
                                and measured.classical_entries == cost.classical_cost(n, alpha))
            if cfg.noisy:
                exact = held_karp_full(build_graph(inst)).weight
                row["success"] = sol is not None and sol.weight == exact
            rows.append(row)
    rows.sort(key=lambda r: (r["n"], r["trial"]))
    return rows


def cmd_bench(args) -> None:
    cfg = _qcfg(args)
    try:
        ns = parse_range(args.n_range)
    except ValueError as exc:
        raise CliError(f"bad --n-range: {exc}", EXIT_INPUT) from exc
    rows = bench_rows(ns, args.trials, cfg, args.alpha, args.k, args.alphabet, args.seed)
    cols = CSV_COLUMNS + (["success"] if cfg.noisy else [])
    lines = [",".join(cols)]
    for r in rows:
        lines.append(",".join(str(r[c]).lower() if isinstance(r[c], bool) else str(r[c])
                              for c in cols))
    _emit("\n".join(lines) + "\n", args.out)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qsuperstring", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def solver_flags(sp, default_mode="hybrid"):
        sp.add_argument("--mode", choices=["brute", "classical", "hybrid"], default=default_mode)
        sp.add_argument("--alpha", type=float, default=ALPHA)
        sp.add_argument("--noisy", action="store_true", help="inject Durr-Hoyer failures")
        sp.add_argument("--fail-prob", type=float, default=0.1)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--boost-reps", type=int, default=None, help="default 2n")
        sp.add_argument("--out", default=None)

    g = sub.add_parser("gen", help="write a random instance")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--alphabet", default="ACGT")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", default=None)
    g.set_defaults(func=cmd_gen)

    s = sub.add_parser("solve", help="solve an instance file")
    s.add_argument("--input", default=None, help="instance file, one string per line")
    solver_flags(s)
    s.set_defaults(func=cmd_solve)

    a = sub.add_parser("assemble", help="assemble FASTA reads")
    a.add_argument("--input", default=None)
    solver_flags(a)
    a.set_defaults(func=cmd_assemble)

    b = sub.add_parser("bench", help="ledger benchmark sweep as CSV")
    b.add_argument("--n-range", default="8,12")
    b.add_argument("--trials", type=int, default=1)
    b.add_argument("--k", type=int, default=8)
    b.add_argument("--alphabet", default="ACGT")
    solver_flags(b)
    b.set_defaults(func=cmd_bench)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    return 0


if __name__ == "__main__":
    sys.exit(main())
