"""Plain-text and FASTA instance readers."""
from __future__ import annotations

import re

from .overlap import InstanceError

_TOKEN = re.compile(r"[A-Za-z0-9]+")


def parse_lines(text: str) -> list[str]:
    """One string per line over [A-Za-z0-9]; a single trailing newline is allowed."""
    lines = text.splitlines()
    if not lines:
        raise InstanceError("empty instance")
    out = []
    for no, line in enumerate(lines, 1):
        if not line:
            raise InstanceError(f"line {no}: blank line")
        if not _TOKEN.fullmatch(line):
            raise InstanceError(f"line {no}: characters outside [A-Za-z0-9]")
        out.append(line)
    return out


def parse_fasta(text: str) -> list[tuple[str, str]]:
    """Records as (id, uppercased sequence); multi-line sequences are joined."""
    records: list[tuple[str, list[str]]] = []
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith(">"):
            desc = line[1:].split()
            records.append((desc[0] if desc else f"record{len(records)}", []))
            continue
        if not records:
            raise InstanceError(f"line {no}: sequence before the first header")
        if not _TOKEN.fullmatch(line):
            raise InstanceError(f"line {no}: characters outside [A-Za-z0-9]")
        records[-1][1].append(line.upper())
    if not records:
        raise InstanceError("no FASTA records")
    out = []
    for rid, chunks in records:
        if not chunks:
            raise InstanceError(f"record {rid!r} has no sequence")
        out.append((rid, "".join(chunks)))
    return out
