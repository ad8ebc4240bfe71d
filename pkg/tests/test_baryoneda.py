import numpy as np
import pytest

from singcat.baryoneda import (BarTensor, YonedaComplex, YonedaSpace, bar_d, bar_resolves,
                               bar_truncation, bar_d_squared, comultiplication_check, cup,
                               delta_matrix, delta_matrix_reference, from_module_map, identity,
                               iota_counit_check, pair_basis, random_element, words,
                               yoneda_cohomology)
from singcat.complexes import Complex
from singcat.modrep import hom_space, simple
from singcat.resolutions import Resolution
from singcat.sgcalc import ext


def test_words_count(r2, r3, a2):
    # x²: one word per length; x³: 2^n; A₂: only the single arrow
    assert [len(words(r2.algebra, n)) for n in range(4)] == [1, 1, 1, 1]
    assert [len(words(r3.algebra, n)) for n in range(4)] == [1, 2, 4, 8]
    assert [len(words(a2.algebra, n)) for n in range(3)] == [1, 1, 0]


def test_bar_d_on_length_one(r2):
    # d(1 ⊗ [x] ⊗ 1) = x ⊗ [] ⊗ 1 - 1 ⊗ [] ⊗ x, which is x ⊗ 1 + 1 ⊗ x over F2
    A = r2.algebra
    d = bar_d(A, 0, (1,), 0)
    assert d == {(1, (), 0): 1, (0, (), 1): 1}


def test_bar_d_squares_to_zero(r3, a2, r2q):
    for A in (r3.algebra, a2.algebra, r2q.algebra):
        slices = bar_truncation(A, 4)
        assert all(bar_d_squared(A.field, slices).values())


@pytest.mark.parametrize("name", ["r2", "r3", "a2", "r2q"])
def test_coalgebra_axioms(request, name):
    rep = comultiplication_check(request.getfixturevalue(name).algebra, 4)
    assert rep.ok, rep.lines()
    assert all(line.startswith("PASS") for line in rep.lines())


def test_bar_resolves(r3, a2):
    for M in (r3["k"], r3["M2"], simple(a2.algebra, 0)):
        h = bar_resolves(M, 4)
        assert h[0] == M.dim
        assert all(h[k] == 0 for k in range(-3, 0))


def test_iota_counit(r2, a2):
    assert iota_counit_check(r2["k"], 3).ok
    assert iota_counit_check(simple(a2.algebra, 0), 3).ok


def test_bar_tensor_of_zero_complex(r2):
    BT = BarTensor(Complex(r2.algebra.field, 0, [], [], algebra=r2.algebra, check=False), 2)
    assert BT.complex.total_dim() == 0


def test_pair_basis_sizes(r3):
    B = pair_basis(r3.algebra, 2, (0,))
    assert B.size == 4 and len(B.items) == 4


@pytest.mark.parametrize("name", ["r3", "r2q", "a2"])
def test_fast_delta_matches_reference(request, name):
    f = request.getfixturevalue(name)
    A = f.algebra
    M = simple(A, 0)
    X = Resolution(M).complex(2)
    for t in (-1, 0, 1):
        S, T = YonedaSpace(X, X, t, 3), YonedaSpace(X, X, t + 1, 3)
        for part in ("in", "ex", "all"):
            assert np.array_equal(delta_matrix(S, T, part), delta_matrix_reference(S, T, part))


@pytest.mark.parametrize("name", ["r3", "r2q"])
def test_leibniz_and_associativity(request, name, rng):
    A = request.getfixturevalue(name).algebra
    X = Resolution(simple(A, 0)).complex(2)
    for _ in range(15):
        f, g, h = (random_element(rng, X, X, int(rng.integers(0, 3)), int(rng.integers(-2, 2)))
                   for _ in range(3))
        sign = -1 if g.degree % 2 else 1
        assert cup(g, f).delta().equal(cup(g.delta(), f) + cup(g, f.delta()).scale(sign))
        assert cup(h, cup(g, f)).equal(cup(cup(h, g), f))
        assert f.delta().delta().is_zero()


def test_identity_is_unit(r3, rng):
    X = Resolution(r3["k"]).complex(2)
    f = random_element(rng, X, X, 2, 1)
    assert cup(identity(X), f).equal(f) and cup(f, identity(X)).equal(f)
    assert identity(X).is_closed()


def test_module_maps_are_closed(r3):
    k, M2 = r3["k"], r3["M2"]
    X = Complex(k.field, 0, [M2], [])
    Y = Complex(k.field, 0, [k], [])
    for m in hom_space(M2, k).basis:
        g = from_module_map(X, Y, {0: m})
        assert g.is_closed() and g.is_E_linear()


@pytest.mark.parametrize("name", ["r2", "r3", "a2", "r2q"])
def test_cohomology_is_ext(request, name):
    A = request.getfixturevalue(name).algebra
    S = [simple(A, v) for v in range(A.nverts)]
    for M in S:
        for N in S:
            for t in range(0, 4):
                assert yoneda_cohomology(M, N, t) == ext(M, N, t)


def test_yoneda_complex_of_resolution(r2):
    X = Resolution(r2["k"]).complex(2)
    YC = YonedaComplex(X, X, -2, 2)
    F = X.field
    for t in (-2, 0):
        assert F.is_zero(F.matmul(YC.d[t + 1], YC.d[t]))
    with pytest.raises(ValueError):
        YC.cohomology(2)
