from __future__ import annotations

import json
import subprocess
import sys
from pathlib import Path

import pytest

from spa.cli import main
from spa.errors import ParseError, UnknownGenerator
from spa.parsing import parse_polynomial, read_polynomials
from spa.quantum import build_uq_plus


def run(capsys, *argv) -> tuple[int, str, str]:
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def ideal(tmp_path: Path) -> str:
    p = tmp_path / "ideal.txt"
    p.write_text("# the fixture ideal\nx[1,2]\n\n", encoding="utf-8")
    return str(p)


@pytest.fixture
def empty(tmp_path: Path) -> str:
    p = tmp_path / "empty.txt"
    p.write_text("", encoding="utf-8")
    return str(p)


def test_parse_examples():
    A3 = build_uq_plus(3)
    f = parse_polynomial("(q^2 - q^-2) * x[1,4]*x[2,3]", A3)
    assert len(f.terms) == 1
    A = build_uq_plus(2)
    assert str(parse_polynomial("x[2,3]*x[1,2]", A)) == "q^2*x[1,2]*x[2,3] - q*x[1,3]"
    with pytest.raises(UnknownGenerator):
        parse_polynomial("x[9,9]", A)
    with pytest.raises(ParseError, match="position"):
        parse_polynomial("x[1,2] + * 3", A)
    with pytest.raises(ParseError, match="overflow"):
        parse_polynomial("x[1,2]^100000", A)
    assert parse_polynomial("x[1, 2] * 3/2", A) == parse_polynomial("3/2*x[1,2]", A)


def test_read_polynomials_skips_comments():
    A = build_uq_plus(2)
    fs = read_polynomials(["# c", "x[1,2]  # trailing", "", "x[2,3]*x[1,2]"], A)
    assert len(fs) == 2


def test_check_solvable(capsys):
    code, out, _ = run(capsys, "check-solvable", "--algebra", "uq+ 3", "--q", "symbolic")
    assert code == 0 and "solvable: yes" in out
    code, out, _ = run(capsys, "check-solvable", "--algebra", "uq+ 2", "--ordering", "lexword")
    assert code == 1 and "TailNotSmaller" in out


def test_gb_fixture(capsys, ideal):
    code, out, _ = run(capsys, "gb", "--algebra", "uq+ 2", "--side", "left", "--gens", ideal)
    lines = out.splitlines()
    assert code == 0
    assert lines[0] == "# algebra: uq+ 2; ordering: degrevlex; side: left; q: symbolic"
    assert lines[1:] == ["x[1,2]"]
    code, out, _ = run(capsys, "gb", "--algebra", "uq+ 2", "--side", "two-sided", "--gens", ideal)
    assert out.splitlines()[1:] == ["x[1,3]", "x[1,2]"]


def test_text_and_json_agree(capsys, ideal):
    _, text, _ = run(capsys, "gb", "--side", "two-sided", "--gens", ideal)
    _, js, _ = run(capsys, "gb", "--side", "two-sided", "--gens", ideal, "--format", "json")
    assert json.loads(js)["basis"] == text.splitlines()[1:]


def test_gkdim_and_hilbert(capsys, empty, ideal):
    code, out, _ = run(capsys, "gkdim", "--algebra", "uq+ 2", "--gens", empty)
    assert (code, out.strip()) == (0, "3")
    code, out, _ = run(capsys, "hilbert", "--gens", ideal, "--side", "two-sided", "--dmax", "3")
    assert out.strip() == "1 1 1 1"
    code, out, err = run(capsys, "gkdim", "--gens", ideal, "--ordering", "paper")
    assert "warning" in err


def test_member_and_nf(capsys, ideal):
    code, out, _ = run(capsys, "member", "--gens", ideal, "--side", "two-sided", "--poly", "x[1,3]")
    assert code == 0 and "member: yes" in out
    code, out, _ = run(capsys, "member", "--gens", ideal, "--poly", "x[1,3]")
    assert code == 1 and "member: no" in out
    code, out, _ = run(capsys, "nf", "--gens", ideal, "--poly", "x[1,2]*x[2,3]")
    assert out.strip() == "q^-1*x[1,3]"


def test_eliminate(capsys, ideal):
    code, out, _ = run(capsys, "eliminate", "--gens", ideal, "--side", "two-sided", "--keep", "x[1,3]")
    assert code == 0 and out.splitlines()[1:] == ["x[1,3]"]
    code, out, _ = run(capsys, "eliminate", "--gens", ideal, "--side", "two-sided", "--lemma")
    records = [json.loads(line) for line in out.splitlines()]
    assert records[-1]["passed"] and records[-1]["gkdim"] == 1
    assert len(records) == 8


def test_pbw_and_gr(capsys):
    code, out, _ = run(capsys, "pbw-check", "--algebra", "uq+ 3")
    assert code == 0 and "triples checked: 20" in out
    code, out, _ = run(capsys, "gr", "--algebra", "uq+ 2")
    assert "x[2,3]*x[1,2] = q^2*x[1,2]*x[2,3]" in out
    assert code == 0


def test_usage_errors(capsys, tmp_path):
    assert run(capsys, "check-solvable", "--q", "1")[0] == 2
    assert run(capsys, "check-solvable", "--algebra", "so(3)")[0] == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("x[9,9]\n", encoding="utf-8")
    assert run(capsys, "gb", "--gens", str(bad))[0] == 2
    assert run(capsys, "gb", "--gens", str(tmp_path / "missing.txt"))[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_budget_exit_code(capsys, tmp_path):
    p = tmp_path / "gens.txt"
    p.write_text("x[1,2]*x[3,4] + x[1,4]\nx[2,4]*x[1,3] - x[2,3]\n", encoding="utf-8")
    code, _, err = run(capsys, "gb", "--algebra", "uq+ 3", "--gens", str(p), "--budget", "4")
    assert code == 3 and "budget" in err


def test_budget_from_environment(tmp_path):
    p = tmp_path / "gens.txt"
    p.write_text("x[1,2]*x[3,4] + x[1,4]\nx[2,4]*x[1,3] - x[2,3]\n", encoding="utf-8")
    proc = subprocess.run([sys.executable, "-m", "spa.cli", "gb", "--algebra", "uq+ 3",
                           "--gens", str(p)], capture_output=True, text=True,
                          env={"SPA_BUDGET": "4", "PATH": ""})
    assert proc.returncode == 3
