import pytest

from singcat.conjlab import buchweitz_check, gproj_certify, perp_R_certify, presilting_scan
from singcat.modrep import projective_at, regular, simple


def test_perp_certificates(r2, a2):
    assert str(perp_R_certify(r2["k"], 6)) == "holds-to-depth 6"
    assert str(perp_R_certify(simple(a2.algebra, 0), 4)) == "fails(1)"


def test_gp_verdicts(r3, a2):
    c = gproj_certify(r3["k"])
    assert c.verdict == "certified-GP" and c.reverify()
    assert "period 2" in str(c)
    P = gproj_certify(regular(r3.algebra))
    assert P.verdict == "certified-GP" and "projective" in str(P) and P.reverify()
    bad = gproj_certify(simple(a2.algebra, 0))
    assert bad.verdict == "certified-not" and bad.failing == 1 and not bad.reverify()


def test_gp_unknown_when_depth_too_small(r3):
    # period 2 cannot be seen with maxdepth below 2
    assert gproj_certify(r3["M2"], depth=1).verdict == "unknown"


def test_buchweitz_rows(r3):
    rep = buchweitz_check(r3["k"], r3["M2"], (-3, 3))
    assert rep.ok
    assert len(rep.rows) == 7 and rep.lines()[-1] == "buchweitz base ok"


def test_buchweitz_refuses_non_gp(a2):
    S1 = simple(a2.algebra, 0)
    with pytest.raises(ValueError):
        buchweitz_check(S1, S1)


def test_presilting_scan(r2, a2):
    entries = presilting_scan([r2["k"], r2["R"]])
    assert [e.line() for e in entries] == ["presilting k nonzero at n=1", "presilting R zero object"]
    A = a2.algebra
    lines = [e.verdict for e in presilting_scan([simple(A, 0), simple(A, 1), projective_at(A, 0)])]
    assert lines == ["zero object"] * 3


def test_presilting_empty_window(r3):
    (e,) = presilting_scan([r3["k"]], n_max=0)
    assert e.verdict == "presilting-to-window"
