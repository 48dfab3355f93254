import json

import pytest

from qsuperstring.cli import CSV_COLUMNS, main, parse_range
from qsuperstring.cost import quantum_cost


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_gen_is_deterministic(capsys):
    _, a, _ = run(["gen", "--n", "6", "--k", "5", "--seed", "3"], capsys)
    _, b, _ = run(["gen", "--n", "6", "--k", "5", "--seed", "3"], capsys)
    lines = a.splitlines()
    assert a == b and len(lines) == 6
    assert all(len(s) == 5 and set(s) <= set("ACGT") for s in lines)


def test_gen_rejects_bad_args(capsys):
    code, _, err = run(["gen", "--n", "0", "--k", "5"], capsys)
    assert code == 2 and "error" in err


def test_solve_json(tmp_path, capsys):
    path = write(tmp_path, "in.txt", "ABCD\nCDEF\nEFGH\nBC\n")
    code, out, _ = run(["solve", "--input", path, "--mode", "classical"], capsys)
    doc = json.loads(out)
    assert code == 0
    assert doc["superstring"] == "ABCDEFGH" and doc["length"] == 8 and doc["weight"] == 4
    assert doc["path"] == [0, 1, 2] and doc["filtered"] == [3]
    assert set(doc["queries"]) == {"quantum_charged", "classical_entries", "per_level"}


def test_solve_hybrid_ledger(tmp_path, capsys):
    _, inst, _ = run(["gen", "--n", "8", "--k", "6", "--seed", "1"], capsys)
    path = write(tmp_path, "in.txt", inst)
    code, out, _ = run(["solve", "--input", path], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["queries"]["quantum_charged"] == quantum_cost(8)
    assert sorted(doc["path"]) == list(range(8))


def test_solve_errors(tmp_path, capsys):
    bad = write(tmp_path, "bad.txt", "AC#T\n")
    assert run(["solve", "--input", bad], capsys)[0] == 2

    eleven = write(tmp_path, "n11.txt", "".join(f"{i:04b}\n" for i in range(11)))
    code, _, err = run(["solve", "--input", eleven, "--mode", "brute"], capsys)
    assert code == 3 and "oracle" in err

    seventeen = write(tmp_path, "n17.txt", "".join(f"{i:05b}\n" for i in range(17)))
    assert run(["solve", "--input", seventeen], capsys)[0] == 4

    assert run(["solve", "--input", str(tmp_path / "missing.txt")], capsys)[0] == 2
    assert run(["solve", "--input", eleven, "--alpha", "1.5"], capsys)[0] == 2


def test_assemble_with_duplicates(tmp_path, capsys):
    fasta = ">r1\nACGTAC\n>r2\nTACGGA\n>r3\nacgtac\n>r4\nCGTA\n"
    path = write(tmp_path, "reads.fa", fasta)
    code, out, _ = run(["assemble", "--input", path, "--mode", "classical"], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["superstring"] == "ACGTACGGA"
    assert doc["filtered"] == [2, 3]
    by_id = {r["id"]: r for r in doc["records"]}
    assert by_id["r3"]["vertex"] is None and by_id["r3"]["covered_by"] == 0
    assert all(r["id"] and r["covered_by"] in (0, 1) for r in doc["records"])


def test_assemble_malformed(tmp_path, capsys):
    path = write(tmp_path, "bad.fa", "ACGT\n>r1\nACGT\n")
    assert run(["assemble", "--input", path], capsys)[0] == 2


def test_bench_rows(capsys):
    code, out, _ = run(["bench", "--n-range", "8", "--trials", "2", "--k", "6"], capsys)
    lines = out.splitlines()
    assert code == 0 and lines[0] == ",".join(CSV_COLUMNS)
    assert len(lines) == 3 and all(line.endswith(",true") for line in lines[1:])


def test_bench_noisy_has_success_column(capsys):
    code, out, _ = run(["bench", "--n-range", "8", "--noisy", "--seed", "4"], capsys)
    header, row = out.splitlines()
    assert header.endswith(",success") and row.split(",")[-1] in ("true", "false")


def test_bench_empty_range(capsys):
    code, out, _ = run(["bench", "--n-range", ""], capsys)
    assert code == 0 and out == ",".join(CSV_COLUMNS) + "\n"


def test_bench_size_limit(capsys):
    assert run(["bench", "--n-range", "17"], capsys)[0] == 4


@pytest.mark.parametrize("text,expected", [
    ("8,12", [8, 12]),
    ("8-11", [8, 9, 10, 11]),
    ("8-16:4", [8, 12, 16]),
    ("", []),
])
def test_parse_range(text, expected):
    assert parse_range(text) == expected


def test_out_file(tmp_path, capsys):
    target = tmp_path / "inst.txt"
    run(["gen", "--n", "3", "--k", "4", "--out", str(target)], capsys)
    assert len(target.read_text().splitlines()) == 3
