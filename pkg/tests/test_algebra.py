import numpy as np
import pytest

from singcat.algebra import (AlgebraError, ParseError, load_text, parse_algebra, parse_quiver,
                             path_algebra_A, random_algebra, truncated_polynomial,
                             upper_triangular_subalgebra)
from singcat.exactlin import Field


def test_loop_with_square_relation():
    q = parse_quiver("vertices: 1; arrows: a:1->1; relations: a*a")
    assert len(q.vertices) == 1 and len(q.arrows) == 1 and len(q.relations) == 1
    A = parse_algebra("field F2\nvertices: 1\narrows: a:1->1\nrelations: a*a\nbound: 4")
    assert A.dim == 2 and A.labels == ["e1", "a"]


def test_a2_compiles_to_dim_3():
    A = parse_algebra("vertices: 1,2; arrows: a:1->2; relations: (none); bound: 4")
    assert A.dim == 3 and A.nverts == 2


def test_free_loop_is_rejected():
    with pytest.raises(AlgebraError, match="finite"):
        parse_algebra("vertices: 1; arrows: a:1->1; relations: (none); bound: 4")


def test_syntax_error_points_at_token():
    with pytest.raises(ParseError) as e:
        parse_quiver("vertices: 1\narrows a 1 2")
    assert e.value.line == 2


def test_unknown_arrow_in_relation():
    with pytest.raises(ParseError, match="unknown arrow"):
        parse_quiver("vertices: 1; arrows: a:1->1; relations: b*b")


def test_duplicate_arrow():
    with pytest.raises(ParseError):
        parse_quiver("vertices: 1; arrows: a:1->1, a:1->1; relations: a*a")


def test_opposite():
    A = truncated_polynomial(2, 2)
    assert np.array_equal(A.opposite().mult, A.mult)
    B = path_algebra_A(2)
    assert B.opposite().opposite().equal(B)
    assert B.opposite().lvert == B.rvert


def test_structure_checks():
    for A in (truncated_polynomial(3, 3), path_algebra_A(3, 0)):
        A.check()
        assert A.radical


def test_table_stanza_matches_quiver():
    text = """field F2
basis: one, x
const: (0,0,0,1), (0,1,1,1), (1,0,1,1)
unit: 1 0
idempotents: 1 0
complement: 1
"""
    A = load_text(text).algebra
    B = truncated_polynomial(2, 2)
    assert np.array_equal(A.mult, B.mult)


def test_non_associative_table_rejected():
    text = """field F2
basis: one, x, y
const: (0,0,0,1), (0,1,1,1), (1,0,1,1), (0,2,2,1), (2,0,2,1), (1,1,2,1), (1,2,1,1)
unit: 1 0 0
idempotents: 1 0 0
complement: 1, 2
"""
    with pytest.raises(AlgebraError):
        load_text(text)


def test_upper_triangular_and_random():
    F = Field(2)
    g = F.zeros((3, 3))
    g[0, 1] = g[1, 2] = 1
    A = upper_triangular_subalgebra(F, 3, [0, 0, 0], [g])
    assert A.dim == 3 and A.nverts == 1  # 1, g, g^2
    rng = np.random.default_rng(1)
    for _ in range(10):
        B = random_algebra(rng, F, max_dim=4)
        B.check()
        assert B.dim <= 4 and B.radical
