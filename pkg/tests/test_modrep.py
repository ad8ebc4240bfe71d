import numpy as np
import pytest

from singcat.modrep import (ModuleError, ModuleRep, direct_sum, dual_module, find_isomorphism,
                            hom_space, is_module_map, projective_at, quotient_module, radical_of,
                            regular, simple, stable_hom_dim, tensor_over_R, zero_module)


def test_projectives_of_a2(a2):
    A = a2.algebra
    assert projective_at(A, 0).dim == 2
    assert projective_at(A, 1).dim == 1
    assert regular(A).dim == 3


def test_hom_between_projectives_of_a2(a2):
    A = a2.algebra
    P1, P2 = projective_at(A, 0), projective_at(A, 1)
    # Hom(Λe_i, Λe_j) = e_i Λ e_j
    assert hom_space(P1, P1).dim == 1
    assert hom_space(P2, P1).dim == 1
    assert hom_space(P1, P2).dim == 0
    assert hom_space(P2, P2).dim == 1


def test_hom_basis_are_module_maps(r3):
    k, R = r3["k"], r3["R"]
    H = hom_space(R, R)
    assert H.dim == 3
    for f in H.basis:
        assert is_module_map(f, R, R)
        c = H.coords(f)
        assert np.array_equal(H.element(c), f)
    assert hom_space(k, R).dim == 1 and hom_space(R, k).dim == 1


def test_dual_of_regular_and_zero(r2):
    A = r2.algebra
    D = dual_module(regular(A))
    assert D.side == "right" and D.dim == 2
    Z = dual_module(zero_module(A))
    assert Z.dim == 0


def test_tensor_k_k(r2):
    k = r2["k"]
    T = tensor_over_R(dual_module(k), k)
    assert T.dim == 1
    with pytest.raises(ModuleError):
        tensor_over_R(k, k)


def test_tensor_with_regular_is_identity(r3):
    A = r3.algebra
    M = r3["M2"]
    Rr = regular(A, side="right")
    assert tensor_over_R(Rr, M).dim == M.dim


def test_find_isomorphism(r2):
    A = r2.algebra
    v, w = find_isomorphism(regular(A), projective_at(A, 0))
    assert v == "iso" and w.shape == (2, 2)
    assert find_isomorphism(r2["k"], regular(A))[0] == "non-iso"
    assert find_isomorphism(r2["F"], regular(A))[0] == "iso"


def test_radical_and_quotient(r3):
    R = r3["R"]
    rad = radical_of(R)
    assert rad.shape[1] == 2
    top, _, _ = quotient_module(R, rad)
    assert find_isomorphism(top, r3["k"])[0] == "iso"


def test_stable_hom(r2, r3):
    assert stable_hom_dim(r2["k"], r2["k"]) == 1
    assert stable_hom_dim(r2["R"], r2["k"]) == 0
    assert stable_hom_dim(r3["k"], r3["k"]) == 1


def test_direct_sum_and_bad_action(r2):
    A = r2.algebra
    k = r2["k"]
    S = direct_sum([k, k])
    assert S.dim == 2 and hom_space(S, k).dim == 2
    bad = np.array(regular(A).action)
    bad[1] = A.field.eye(2)  # x acting invertibly breaks x² = 0
    with pytest.raises(ModuleError):
        ModuleRep(A, "left", 2, bad, (2,))


def test_simples_of_a2(a2):
    A = a2.algebra
    S1, S2 = simple(A, 0), simple(A, 1)
    assert S1.vertex_dims() != S2.vertex_dims()
    assert hom_space(S1, S2).dim == 0 and hom_space(S1, S1).dim == 1
