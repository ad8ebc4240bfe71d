import pytest

from singcat.modrep import dual_module, projective_at, regular, simple
from singcat.resolutions import Resolution
from singcat.sgcalc import (ext, hyper_tor_stabilized, les3_table, perp_R, phi_kernel,
                            sg_hom_tor_route, sg_hom_vogel_route, sg_iso_test, stable_hom,
                            tate_oracle, tor)


def test_ext_and_tor_over_x2(r2, r2q):
    for f in (r2, r2q):
        k = f["k"]
        assert [ext(k, k, n) for n in range(5)] == [1] * 5
        assert [tor(dual_module(k), k, n) for n in range(4)] == [1] * 4
    assert ext(r2["k"], r2["k"], -1) == 0


def test_ext_over_a2(a2):
    A = a2.algebra
    S1, S2 = simple(A, 0), simple(A, 1)
    assert ext(S1, S2, 1) == 1 and ext(S2, S1, 1) == 0 and ext(S1, S2, 2) == 0


def test_perp_and_phi(r2, a2):
    assert perp_R(r2["k"], 6) is None
    assert perp_R(simple(a2.algebra, 0), 4) == 1
    assert phi_kernel(r2["k"], r2["k"]) == 1
    assert stable_hom(r2["R"], r2["k"]) == 0


def test_les3_table_refuses_outside_perp(a2):
    with pytest.raises(ValueError):
        les3_table(simple(a2.algebra, 0), simple(a2.algebra, 0))


@pytest.mark.parametrize("name,mod", [("r3", "k"), ("r3", "M2"), ("r2", "k"), ("r2q", "k")])
def test_routes_match_oracle(request, name, mod):
    f = request.getfixturevalue(name)
    M = f[mod]
    for n in range(-3, 4):
        want = tate_oracle(M, M, n)
        for route in (sg_hom_tor_route, sg_hom_vogel_route):
            v = route(M, M, n)
            assert v.stabilized and v.value == want, (route.__name__, n)


def test_projective_vanishes(r3):
    R = regular(r3.algebra)
    for n in (-2, 0, 2):
        assert sg_hom_tor_route(R, r3["k"], n).value == 0
        assert sg_hom_vogel_route(r3["k"], R, n).value == 0


def test_complex_arguments(r2):
    # a truncated resolution is perfect, the full one is quasi-isomorphic to k
    perfect = sg_hom_vogel_route(Resolution(r2["k"]).complex(3), r2["k"], 0)
    assert perfect.stabilized and perfect.value == 0
    v = sg_hom_vogel_route(Resolution(r2["k"]).lazy(), r2["k"], 0)
    assert v.stabilized and v.value == 1


def test_row_format(r2):
    v = sg_hom_tor_route(r2["k"], r2["k"], 2)
    assert v.row("k", "k").startswith("sghom k k 2 1 tor ")


def test_hyper_tor(r2):
    k = r2["k"]
    v = hyper_tor_stabilized(stalk_res(k), k, -2)
    assert v.stabilized and v.value == tor(dual_module(k), k, 2)


def stalk_res(k):
    return Resolution(k).lazy()


def test_sg_iso(r3):
    k = r3["k"]
    assert sg_iso_test(k, k, shift=2).verdict == "certified-isomorphic"
    assert sg_iso_test(k, r3["M2"], shift=0).verdict == "undetermined"
    assert sg_iso_test(k, r3["M2"], shift=1).verdict == "certified-isomorphic"


def test_projective_at_vertex_is_zero(a2):
    P = projective_at(a2.algebra, 0)
    assert sg_hom_tor_route(P, P, 0).value == 0
