from fractions import Fraction

import numpy as np
import pytest

from singcat.exactlin import (Basis, Field, Quotient, colspace, inverse, nullspace, rank,
                              rank_nullspace, rref, solve)

F2, F3, Q = Field(2), Field(3), Field(0)


def test_field_parse_and_reject():
    assert Field.parse("F5").p == 5 and Field.parse("Q").p == 0 and Field.parse("GF7").p == 7
    with pytest.raises(ValueError):
        Field(4)
    with pytest.raises(ValueError):
        Field.parse("R")


def test_zero_matrix_rank():
    r, ker, img = rank_nullspace(F2, F2.zeros((2, 3)))
    assert r == 0 and ker.shape[1] == 3 and img.shape[1] == 0


def test_identity_over_q():
    r, ker, img = rank_nullspace(Q, Q.eye(3))
    assert r == 3 and ker.shape[1] == 0


def test_all_ones_over_f2():
    a = F2.array([[1, 1], [1, 1]])
    r, ker, _ = rank_nullspace(F2, a)
    assert r == 1
    assert ker.shape[1] == 1 and list(ker[:, 0]) == [1, 1]


def test_solve_examples():
    assert list(solve(F3, F3.eye(2), F3.array([1, 0]))) == [1, 0]
    assert solve(F3, F3.zeros((2, 2)), F3.array([1, 0])) is None
    x = solve(F2, F2.array([[1, 1]]), F2.array([1]))
    assert (x[0] + x[1]) % 2 == 1


def test_gf2_fast_path_matches_generic():
    rng = np.random.default_rng(0)
    for _ in range(30):
        a = F2.random(rng, (5, 7))
        fast, p1 = rref(F2, a)
        from singcat.exactlin import _rref_generic
        slow, p2 = _rref_generic(F2, a)
        assert p1 == p2 and np.array_equal(fast, slow)


def test_rationals_stay_exact():
    a = Q.array([[Fraction(1, 3), 1], [2, 6]])
    assert rank(Q, a) == 1
    inv = inverse(Q, Q.array([[2, 1], [1, 1]]))
    assert inv[0, 0] == 1 and inv[0, 1] == -1 and isinstance(inv[0, 0], Fraction)


@pytest.mark.parametrize("fld", [F2, F3, Q])
def test_rank_nullity(fld):
    rng = np.random.default_rng(fld.p)
    for _ in range(20):
        a = fld.random(rng, (4, 6), 0.6)
        k = nullspace(fld, a)
        assert rank(fld, a) + k.shape[1] == 6
        assert fld.is_zero(fld.matmul(a, k))
        assert colspace(fld, a).shape[1] == rank(fld, a)


def test_basis_and_quotient():
    b = Basis(F3, F3.array([[1, 0], [1, 1], [0, 2]]))
    v = F3.array([2, 0, 2])  # 2*c0 + 1*c1
    assert list(b.coords(v)) == [2, 1]
    assert not b.contains(F3.array([1, 0, 0]))
    with pytest.raises(ValueError):
        Basis(F3, F3.array([[1, 2], [1, 2]]))
    q = Quotient(F3, F3.array([[1], [1], [0]]), 3)
    assert q.dim == 2
    assert F3.is_zero(q.project(F3.array([1, 1, 0])))
