"""Property tests driven by hypothesis; seeds feed numpy generators for the heavy objects."""

import numpy as np
from hypothesis import HealthCheck, given, settings, strategies as st

from singcat.algebra import random_algebra
from singcat.baryoneda import comultiplication_check, cup, random_element, yoneda_cohomology
from singcat.complexes import Complex, GradedMap, cone
from singcat.exactlin import Field, nullspace, rank, rref, solve
from singcat.modrep import regular, simple
from singcat.resolutions import Resolution
from singcat.sgcalc import ext, sg_hom_tor_route, sg_hom_vogel_route
from singcat.singyoneda import omega_nc

from conftest import Fixture

FIELDS = st.sampled_from([2, 3, 5, 0])
SEEDS = st.integers(0, 2**32 - 1)
SLOW = settings(max_examples=12, deadline=None, suppress_health_check=[HealthCheck.too_slow])


def small_matrix(p, seed, maxdim=6):
    F = Field(p)
    rng = np.random.default_rng(seed)
    r, c = (int(x) for x in rng.integers(1, maxdim + 1, 2))
    return F, F.random(rng, (r, c), float(rng.uniform(0.2, 1.0)))


@settings(max_examples=60, deadline=None)
@given(FIELDS, SEEDS)
def test_rank_nullity(p, seed):
    F, a = small_matrix(p, seed)
    k = nullspace(F, a)
    assert rank(F, a) + k.shape[1] == a.shape[1]
    assert F.is_zero(F.matmul(a, k))


@settings(max_examples=60, deadline=None)
@given(FIELDS, SEEDS)
def test_rref_is_idempotent_and_solve_roundtrips(p, seed):
    F, a = small_matrix(p, seed)
    r, piv = rref(F, a)
    r2, piv2 = rref(F, r)
    assert piv == piv2 and np.array_equal(r, r2)
    x = F.random(np.random.default_rng(seed + 1), (a.shape[1],))
    b = F.matmul(a, x)
    y = solve(F, a, b)
    assert y is not None and np.array_equal(F.matmul(a, y), b)


@settings(max_examples=40, deadline=None)
@given(FIELDS, SEEDS)
def test_cone_identities(p, seed):
    F = Field(p)
    rng = np.random.default_rng(seed)
    n0, n1 = (int(x) for x in rng.integers(1, 4, 2))
    dX = F.random(rng, (n1, n0))
    X = Complex(F, 0, [n0, n1], [dX])
    # Id + dh + hd is a chain map for any h: X^1 -> X^0
    h = F.random(rng, (n0, n1))
    f = GradedMap(X, X, 0, {0: F.reduce(F.eye(n0) + F.matmul(h, dX)),
                            1: F.reduce(F.eye(n1) + F.matmul(dX, h))})
    assert f.is_closed()
    C = cone(f)
    assert all(C.identities(f).values())


@settings(max_examples=10, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(SEEDS)
def test_random_algebra_axioms(seed):
    A = random_algebra(np.random.default_rng(seed), Field(2), max_dim=4)
    A.check()
    assert A.opposite().opposite().equal(A)
    assert comultiplication_check(A, 3).ok
    omega_nc(regular(A))  # the constructor validates the twisted action


@SLOW
@given(SEEDS)
def test_yoneda_cohomology_is_ext_on_random_algebras(seed):
    A = random_algebra(np.random.default_rng(seed), Field(2), max_dim=4)
    for u in range(A.nverts):
        for v in range(A.nverts):
            M, N = simple(A, u), simple(A, v)
            for t in range(3):
                assert yoneda_cohomology(M, N, t) == ext(M, N, t)


@SLOW
@given(SEEDS, st.integers(-2, 2))
def test_tor_and_vogel_routes_agree(seed, n):
    A = random_algebra(np.random.default_rng(seed), Field(2), max_dim=4)
    M = simple(A, 0)
    a, b = sg_hom_tor_route(M, M, n), sg_hom_vogel_route(M, M, n)
    assert a.stabilized and b.stabilized and a.value == b.value


_R3, _R2Q = Fixture("r3"), Fixture("r2q")


@settings(max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(st.sampled_from(["r3", "r2q"]), SEEDS, st.integers(0, 2), st.integers(0, 2), st.integers(-2, 1),
       st.integers(-2, 1))
def test_sign_sensitive_leibniz(name, seed, nf, ng, tf, tg):
    A = (_R3 if name == "r3" else _R2Q).algebra
    X = Resolution(simple(A, 0)).complex(2)
    rng = np.random.default_rng(seed)
    f = random_element(rng, X, X, nf, tf)
    g = random_element(rng, X, X, ng, tg)
    sign = -1 if g.degree % 2 else 1
    assert cup(g, f).delta().equal(cup(g.delta(), f) + cup(g, f.delta()).scale(sign))
    assert f.delta().delta().is_zero()
