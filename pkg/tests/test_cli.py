import re
import subprocess
import sys

import pytest

from singcat import cli
from singcat.sgcalc import StabilizedValue

from conftest import FIXTURES

GOLDEN_DIR = FIXTURES.parent / "tests" / "golden"

GOLDENS = {
    "sghom_r2_all": ["sghom", "--algebra", "r2.alg", "-M", "k", "-N", "k", "--window", "-4..4", "--route", "all"],
    "sghom_a2": ["sghom", "--algebra", "a2.alg", "-M", "S1", "-N", "S1", "--window", "-2..2"],
    "bar_selftest_r2": ["bar", "selftest", "--algebra", "r2.alg", "--pmax", "6"],
    "resolve_r3": ["resolve", "--algebra", "r3.alg", "-M", "k"],
    "tate_r2": ["tate-table", "--algebra", "r2.alg", "--module", "k", "--window", "-2..2", "--ring"],
    "presilting_r3": ["presilting", "--algebra", "r3.alg"],
    "gp_a2": ["gp-certify", "--algebra", "a2.alg"],
    "buchweitz_r3": ["buchweitz", "--algebra", "r3.alg", "-M", "k", "-N", "k"],
    "ext_a2": ["ext", "--algebra", "a2.alg", "-M", "S1", "-N", "S2"],
    "tor_r2": ["tor", "--algebra", "r2.alg", "-M", "k", "-N", "k"],
    "algebra_check_table": ["algebra", "check", "--algebra", "dual_numbers_table.alg"],
}


def run(args):
    return subprocess.run([sys.executable, "-m", "singcat"] + args, cwd=FIXTURES,
                          capture_output=True, text=True)


@pytest.mark.parametrize("name", sorted(GOLDENS))
def test_golden(name):
    r = run(GOLDENS[name])
    assert r.returncode == 0, r.stderr
    assert r.stdout == (GOLDEN_DIR / f"{name}.txt").read_text()


def test_sghom_rows_parse():
    r = run(GOLDENS["sghom_r2_all"])
    rows = r.stdout.splitlines()
    assert len(rows) == 9
    pat = re.compile(r"^sghom k k -?\d+ 1 all \d+ yes$")
    assert all(pat.match(x) for x in rows)


def test_input_errors_exit_1(monkeypatch):
    monkeypatch.chdir(FIXTURES)
    assert cli.main(["sghom", "--algebra", "missing.alg", "-M", "k", "-N", "k"]) == 1
    assert cli.main(["ext", "--algebra", "r2.alg", "-M", "zz", "-N", "k"]) == 1
    assert cli.main(["sghom", "--algebra", "r2.alg", "-M", "k", "-N", "k", "--window", "3..1"]) == 1
    assert cli.main(["sghom", "--algebra", "r2.alg", "-M", "k", "-N", "k", "--window", "-9..9",
                     "--depth", "4"]) == 1
    assert cli.main(["nonsense"]) == 1
    # buchweitz needs Gorenstein projective inputs
    assert cli.main(["buchweitz", "--algebra", "a2.alg", "-M", "S1", "-N", "S1"]) == 1


def test_bad_algebra_file(tmp_path):
    p = tmp_path / "loop.alg"
    p.write_text("vertices: 1\narrows: a:1->1\nrelations: (none)\nbound: 3\n")
    r = subprocess.run([sys.executable, "-m", "singcat", "algebra", "check", "--algebra", str(p)],
                       capture_output=True, text=True)
    assert r.returncode == 1 and "singcat: error" in r.stderr


def test_presilting_window_exit_3(monkeypatch, capsys):
    monkeypatch.chdir(FIXTURES)
    assert cli.main(["presilting", "--algebra", "r2.alg", "--nmax", "0"]) == 3
    assert "presilting S1 presilting-to-window" in capsys.readouterr().out


def test_unstabilized_strict_exit_2(monkeypatch, capsys):
    monkeypatch.chdir(FIXTURES)
    fake = lambda route, M, N, n, cfg: StabilizedValue(1, 3, False, route, n)
    monkeypatch.setattr(cli, "_route_value", fake)
    args = ["sghom", "--algebra", "r2.alg", "-M", "k", "-N", "k", "--window", "0..0"]
    assert cli.main(args) == 0
    assert cli.main(args + ["--strict"]) == 2
    assert capsys.readouterr().out.splitlines()[-1].endswith(" no")


def test_disagreement_exit_4(monkeypatch, capsys):
    monkeypatch.chdir(FIXTURES)
    fake = lambda route, M, N, n, cfg: StabilizedValue(2 if route == "sy" else 1, 3, True, route, n)
    monkeypatch.setattr(cli, "_route_value", fake)
    code = cli.main(["sghom", "--algebra", "r2.alg", "-M", "k", "-N", "k", "--window", "0..0",
                     "--route", "all"])
    assert code == 4
    assert "disagreement at n=0" in capsys.readouterr().err


def test_selftest_failure_exit_5(monkeypatch):
    from singcat import baryoneda
    from singcat.baryoneda import AxiomReport
    monkeypatch.chdir(FIXTURES)
    monkeypatch.setattr(baryoneda, "comultiplication_check", lambda A, P: AxiomReport({"d^2=0": False}))
    assert cli.main(["bar", "selftest", "--algebra", "r2.alg", "--pmax", "2"]) == 5


def test_table_format(monkeypatch, capsys):
    monkeypatch.chdir(FIXTURES)
    assert cli.main(["ext", "--algebra", "r2.alg", "-M", "k", "-N", "k", "--max", "2",
                     "--format", "table"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].split() == ["ext", "k", "k", "0", "1"] and "  " in lines[0]
