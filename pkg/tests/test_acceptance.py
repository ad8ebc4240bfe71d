"""Acceptance criteria, one test each.

Each check returns (ok, detail); pytest asserts on it and the conftest hook
prints one PASS/FAIL line per criterion.  Run the file directly to get the
same lines without pytest.
"""

import subprocess
import sys
import time

import numpy as np
import pytest

from singcat.algebra import random_algebra
from singcat.baryoneda import YonedaComplex, comultiplication_check, cup, random_element
from singcat.complexes import LazyComplex
from singcat.conjlab import buchweitz_check, gproj_certify, perp_R_certify, presilting_scan
from singcat.exactlin import Field
from singcat.modrep import direct_sum, projective_at, regular, simple
from singcat.resolutions import Resolution
from singcat.sgcalc import (ext, les3_table, les_verify, sg_hom_tor_route, sg_hom_vogel_route,
                            tate_oracle)
from singcat.singyoneda import comm_square_check, functoriality_check, stalk, sy_hom, theta_checks

try:
    from conftest import ACCEPTANCE, FIXTURES, Fixture
except ImportError:  # pragma: no cover - direct execution from elsewhere
    sys.path.insert(0, str(__import__("pathlib").Path(__file__).parent))
    from conftest import ACCEPTANCE, FIXTURES, Fixture


def routes(M, N, n):
    return {"tor": sg_hom_tor_route(M, N, n), "vogel": sg_hom_vogel_route(M, N, n), "sy": sy_hom(M, N, n)}


def crit1():
    t0 = time.perf_counter()
    f = Fixture("r2")
    k = f["k"]
    bad = []
    for n in range(-4, 5):
        oracle = tate_oracle(k, k, n)
        vals = routes(k, k, n)
        if oracle != 1 or any(v.value != 1 or not v.stabilized for v in vals.values()):
            bad.append((n, oracle, {r: (v.value, v.stabilized) for r, v in vals.items()}))
    dt = time.perf_counter() - t0
    return not bad and dt < 10, f"r2 k,k n=-4..4 tor=vogel=sy=oracle=1 ({dt:.2f}s){' ' + str(bad) if bad else ''}"


def crit2():
    t0 = time.perf_counter()
    f = Fixture("a2")
    A = f.algebra
    S = [simple(A, v) for v in range(A.nverts)]
    bad = []
    for M in S:
        for N in S:
            for n in range(-3, 4):
                for r, v in routes(M, N, n).items():
                    if v.value != 0 or not v.stabilized:
                        bad.append((M.name, N.name, n, r, v.value))
    dt = time.perf_counter() - t0
    return not bad and dt < 5, f"A2 simple pairs n=-3..3 all routes 0 ({dt:.2f}s){' ' + str(bad) if bad else ''}"


def crit3():
    t0 = time.perf_counter()
    out = []
    ok = True
    for name in ("r2", "r3"):
        k = Fixture(name)["k"]
        rep = les_verify(k, k, (-3, 3))
        ok &= rep.exact and rep.faithful
        out.append(f"{name}: exact={rep.exact} faithful={rep.faithful}")
    dt = time.perf_counter() - t0
    return ok and dt < 30, "; ".join(out) + f" ({dt:.2f}s)"


def crit4():
    k = Fixture("r2")["k"]
    perp = perp_R_certify(k, 8)
    table = les3_table(k, k, (-4, 4), depth=8)
    vals = {n: sg_hom_tor_route(k, k, n).value for n in range(-4, 5)}
    vog = {n: sg_hom_vogel_route(k, k, n).value for n in range(-4, 5)}
    ok = perp.holds and table == vals == vog
    return ok, f"perp {perp}; table {[table[n] for n in sorted(table)]} vs routes {[vals[n] for n in sorted(vals)]}"


def _yoneda_suite(A, M_list, rng, triples, pmax=6, tmax=6):
    """Returns a dict of check name -> bool for one algebra."""
    res = {}
    rep = comultiplication_check(A, pmax)
    res["d2"] = rep.checks["d^2=0"]
    res["coalg"] = rep.ok
    d2 = True
    ext_ok = True
    for M in M_list:
        for N in M_list:
            YC = YonedaComplex(stalk(M), stalk(N), -1, tmax + 1)
            F = A.field
            for t in range(-1, tmax):
                d0, d1 = YC.d[t], YC.d[t + 1]
                if d0.size and d1.size and not F.is_zero(F.matmul(d1, d0)):
                    d2 = False
            r = Resolution(M)
            for t in range(0, tmax + 1):
                if YC.cohomology(t).dim != ext(M, N, t, r):
                    ext_ok = False
    res["delta2"] = d2
    res["ext"] = ext_ok
    X = Resolution(M_list[0]).complex(2)
    leib = assoc = True
    for _ in range(triples):
        f, g, h = (random_element(rng, X, X, int(rng.integers(0, 3)), int(rng.integers(-2, 2))) for _ in range(3))
        sg = -1 if g.degree % 2 else 1
        if not cup(g, f).delta().equal(cup(g.delta(), f) + cup(g, f.delta()).scale(sg)):
            leib = False
        if not cup(h, cup(g, f)).equal(cup(cup(h, g), f)):
            assoc = False
    res["leibniz"] = leib
    res["assoc"] = assoc
    return res


def crit5():
    t0 = time.perf_counter()
    rng = np.random.default_rng(5)
    algs = []
    for name in ("r2", "r3", "a2"):
        f = Fixture(name)
        algs.append((name, f.algebra, 100))
    arng = np.random.default_rng(2024)
    for i in range(20):
        algs.append((f"random{i}", random_algebra(arng, Field(2), max_dim=4), 5))
    failures = []
    for name, A, triples in algs:
        mods = [simple(A, v) for v in range(A.nverts)]
        r = _yoneda_suite(A, mods, rng, triples)
        failures += [f"{name}:{k}" for k, v in r.items() if not v]
    dt = time.perf_counter() - t0
    return not failures and dt < 60, f"{len(algs)} algebras, d^2/Delta/counit/delta^2/Ext/Leibniz/assoc ({dt:.2f}s)" + (
        f" failures {failures}" if failures else "")


def crit6():
    rng = np.random.default_rng(6)
    failures = []
    for name in ("r2", "r3", "a2", "r2q"):
        A = Fixture(name).algebra
        for v in range(A.nverts):
            M = simple(A, v)
            for tag, X in (("stalk", stalk(M)), ("res", Resolution(M).complex(1))):
                rep = theta_checks(X, rng, samples=50)
                failures += [f"{name}/{M.name}/{tag}:{k}" for k, ok in rep.checks.items() if not ok]
                if not functoriality_check(X, rng, samples=10):
                    failures.append(f"{name}/{M.name}/{tag}:functoriality")
            sq = comm_square_check(M, 4)
            failures += [f"{name}/{M.name}:{k}" for k, ok in sq.checks.items() if not ok]
    return not failures, "theta closed/natural(50)/Omega-theta, square to filtration 4 on all fixtures" + (
        f" failures {failures}" if failures else "")


def random_free_complex(A, seed, lo=None, hi=None, rank_max=2):
    """Complex of free modules R^{r_n} with d^n = x·B_n, B_n random (d² = x²·… = 0)."""
    F = A.field
    R = regular(A)
    xmat = R.action[1]  # left multiplication by x on R

    def ranks(n):
        return int(np.random.default_rng([seed, n + 1000]).integers(1, rank_max + 1))

    def term(n):
        return direct_sum([R] * ranks(n), name=f"R{ranks(n)}")

    def diff(n):
        B = F.random(np.random.default_rng([seed, n + 5000]), (ranks(n + 1), ranks(n)))
        return F.kron(B, xmat)

    return LazyComplex(F, term, diff, lo=lo, hi=hi, algebra=A, side="left", name=f"rand{seed}")


def crit7():
    A = Fixture("r2").algebra
    rng = np.random.default_rng(7)
    bad = []
    for i in range(10):
        X = random_free_complex(A, 100 + i, lo=int(rng.integers(-3, 1)))
        Y = random_free_complex(A, 200 + i, hi=int(rng.integers(0, 4)))
        v = sg_hom_vogel_route(X, Y, 0)
        if v.value != 0 or not v.stabilized:
            bad.append((i, v.value, v.stabilized))
    return not bad, f"10 random (bounded-below, bounded-above) pairs over r2: H^0 = 0 stabilized{' ' + str(bad) if bad else ''}"


def crit8():
    out, ok = [], True
    for name in ("r2", "r3"):
        f = Fixture(name)
        A = f.algebra
        mods = [m for m in f.modules.values()] + [projective_at(A, 0)]
        gp = [M for M in mods if gproj_certify(M).verdict == "certified-GP"]
        for M in gp:
            for N in gp:
                rep = buchweitz_check(M, N, (-2, 2))
                ok &= rep.ok
        out.append(f"{name}: {len(gp)}/{len(mods)} GP modules, {len(gp) ** 2} pairs")
    return ok, "; ".join(out)


def crit9():
    lines, ok = [], True
    for path in sorted(FIXTURES.glob("*.alg")):
        A = Fixture(path.stem).algebra
        mods = []
        for v in range(A.nverts):
            S = simple(A, v)
            S.name = f"{path.stem}:S{v + 1}"
            P = projective_at(A, v)
            P.name = f"{path.stem}:P{v + 1}"
            mods += [S, P]
        for e in presilting_scan(mods, n_max=6):
            if e.verdict == "presilting-to-window" or e.unstabilized:
                ok = False
            if e.name.split(":")[1].startswith("P") and e.verdict != "zero object":
                ok = False
            lines.append(e.line().replace("presilting ", ""))
    return ok, "; ".join(lines)


GOLDEN = [
    ["sghom", "--algebra", "r2.alg", "-M", "k", "-N", "k", "--window", "-4..4", "--route", "all"],
    ["sghom", "--algebra", "a2.alg", "-M", "S1", "-N", "S1", "--window", "-2..2"],
    ["bar", "selftest", "--algebra", "r2.alg", "--pmax", "6"],
    ["resolve", "--algebra", "r3.alg", "-M", "k"],
    ["tate-table", "--algebra", "r2.alg", "--module", "k", "--window", "-2..2", "--ring"],
    ["presilting", "--algebra", "r3.alg"],
    ["gp-certify", "--algebra", "a2.alg"],
    ["buchweitz", "--algebra", "r3.alg", "-M", "k", "-N", "k"],
    ["ext", "--algebra", "a2.alg", "-M", "S1", "-N", "S2"],
    ["tor", "--algebra", "r2.alg", "-M", "k", "-N", "k"],
    ["algebra", "check", "--algebra", "dual_numbers_table.alg"],
]


def run_cli(args):
    return subprocess.run([sys.executable, "-m", "singcat"] + args, cwd=FIXTURES, capture_output=True)


def crit10():
    bad = []
    for args in GOLDEN:
        a, b = run_cli(args), run_cli(args)
        if a.returncode != 0 or a.stdout != b.stdout or a.returncode != b.returncode or not a.stdout:
            bad.append(" ".join(args[:2]))
    return not bad, f"{len(GOLDEN)} golden commands run twice, byte-identical{' except ' + str(bad) if bad else ''}"


CRITERIA = {1: crit1, 2: crit2, 3: crit3, 4: crit4, 5: crit5, 6: crit6, 7: crit7, 8: crit8, 9: crit9, 10: crit10}


@pytest.mark.parametrize("k", sorted(CRITERIA))
def test_criterion(k):
    ok, detail = CRITERIA[k]()
    ACCEPTANCE[k] = (ok, detail)
    print(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for k in sorted(CRITERIA):
        ok, detail = CRITERIA[k]()
        failed += not ok
        print(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}", flush=True)
    sys.exit(1 if failed else 0)
