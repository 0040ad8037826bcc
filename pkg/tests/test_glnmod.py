from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from exptensor import linalg as la
from exptensor.glnmod import (GlModule, build_highest_weight, build_module, exterior, is_dominant,
                              one_dim, parse_module_spec, tensor, verify_gl_relations, weyl_dimension)


def test_one_dim_matrices():
    V = one_dim(Fraction(1, 3), 2)
    assert V.dim == 1
    assert V.E(1, 1) == V.E(2, 2) == [[Fraction(1, 3)]]
    assert V.E(1, 2) == V.E(2, 1) == [[0]]


def test_natural_module():
    V = exterior(1, 2)
    assert la.matvec(V.E(1, 2), [0, 1]) == [1, 0]


def test_top_wedge_is_one_dim_one():
    assert exterior(2, 2) == one_dim(1, 2)


@pytest.mark.parametrize("lam,dim", [((1, 0), 2), ((2, 0), 3), ((1, 1, 0), 3), ((2, 1, 0), 8), ((3, 1), 3)])
def test_highest_weight_dimensions(lam, dim):
    V = build_highest_weight(lam)
    assert V.dim == dim == weyl_dimension(lam)
    assert verify_gl_relations(V).ok


def test_first_fundamental_is_natural():
    assert build_highest_weight((1, 0, 0)) == exterior(1, 3)


def test_fractional_shift():
    V = build_highest_weight((Fraction(5, 2), Fraction(3, 2)))
    assert V.dim == 2
    assert V.weights[0] == (Fraction(5, 2), Fraction(3, 2))


def test_nondominant_rejected():
    assert not is_dominant((Fraction(1, 2), 0))
    with pytest.raises(ValueError):
        build_highest_weight((Fraction(1, 2), 0))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_exterior_relations(n):
    for k in range(n + 1):
        assert verify_gl_relations(exterior(k, n)).ok


def test_corrupted_module_reports_quadruple():
    V = exterior(1, 2)
    action = dict(V.action)
    action[(1, 2)] = [[0, 2], [0, 0]]
    bad = GlModule(2, 2, action, V.weights)
    v = verify_gl_relations(bad)
    assert not v.ok
    kind, quad = v.failures[0]
    assert kind == "bracket" and len(quad) == 4


def test_explicit_rejects_bad_matrices():
    mats = {(i, j): [[0]] for i in (1, 2) for j in (1, 2)}
    mats[(1, 1)] = [[1]]
    with pytest.raises(ValueError):
        build_module(("explicit", 2, mats, [(0, 0)]))


def test_tensor_weights_are_pairwise_sums():
    V, W = exterior(1, 2), build_highest_weight((2, 0))
    T = tensor(V, W)
    expected = Counter(tuple(a + b for a, b in zip(v, w)) for v in V.weights for w in W.weights)
    assert Counter(T.weights) == expected
    assert verify_gl_relations(T).ok


def test_spec_strings():
    assert parse_module_spec("va:1/3", 2) == one_dim(Fraction(1, 3), 2)
    assert parse_module_spec("wedge:*", 2).dim == 4
    assert parse_module_spec("tensor(wedge:1,va:2)", 2).dim == 2
    with pytest.raises(ValueError):
        parse_module_spec("hw:1,0,0", 2)


@given(st.lists(st.integers(0, 2), min_size=2, max_size=3).map(lambda xs: tuple(sorted(xs, reverse=True))))
def test_constructor_output_is_diagonal_weight_module(lam):
    V = build_highest_weight(lam)
    for k in range(1, V.n + 1):
        M = V.E(k, k)
        assert all(M[r][c] == 0 for r in range(V.dim) for c in range(V.dim) if r != c)
