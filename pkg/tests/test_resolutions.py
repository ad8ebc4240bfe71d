import pytest

from singcat.modrep import find_isomorphism, projective_at, regular, simple
from singcat.resolutions import (Resolution, ResolutionError, complete_resolution,
                                 detect_periodicity, projective_cover, syzygy)


def test_minimal_resolution_of_k_over_x2(r2):
    res = Resolution(r2["k"]).extend(5)
    assert [res.projective(n).dim for n in range(5)] == [2] * 5
    assert res.check_exact(5) and res.check_minimal(5)
    assert res.length() is None


def test_resolution_of_k_over_x3_is_2_periodic(r3):
    res = Resolution(r3["k"]).extend(4)
    assert [res.syzygy(n).dim for n in range(1, 5)] == [2, 1, 2, 1]
    per = detect_periodicity(res, 4)
    assert (per.offset, per.period) == (0, 2)


def test_a2_simple_has_finite_resolution(a2):
    A = a2.algebra
    res = Resolution(simple(A, 0)).extend(3)
    assert res.length() == 1
    assert find_isomorphism(res.syzygy(1), projective_at(A, 1))[0] == "iso"


def test_projective_cover(r3):
    P, pi = projective_cover(r3["M2"])
    assert P.dim == 3 and pi.shape == (2, 3)


def test_syzygy_helper(r2):
    assert find_isomorphism(syzygy(r2["k"], 3), r2["k"])[0] == "iso"


def test_complete_resolution_verifies(r3):
    cr = complete_resolution(r3["k"], (-4, 4))
    assert cr.verify(-4, 4) is None
    Z = cr.cocycle_module(1)
    assert find_isomorphism(Z, r3["k"])[0] == "iso"


def test_complete_resolution_refuses_projective(r2):
    R = regular(r2.algebra)
    with pytest.raises(ResolutionError, match="projective"):
        complete_resolution(R)
    cr = complete_resolution(R, allow_projective=True)
    assert cr.per is None and cr.verify(-2, 3) is None


def test_no_period_for_a2_simple(a2):
    with pytest.raises(ResolutionError):
        complete_resolution(simple(a2.algebra, 0))


def test_maxdepth_guard(r2):
    with pytest.raises(ResolutionError):
        detect_periodicity(Resolution(r2["k"]), 1)
