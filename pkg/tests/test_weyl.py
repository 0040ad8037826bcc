from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from exptensor.exactcore import MultiPoly
from exptensor.weyl import (OperatorMatrix, WeylOp, apply_to_monomial, automorphism_apply, exp_twist,
                            fourier, opmatrix_compose, weyl_commutator, weyl_mul)
from strategies import polys, weyl_ops

t1, d1 = WeylOp.t(1, 1), WeylOp.d(1, 1)


def test_defining_relation():
    assert weyl_mul(d1, t1) == t1 * d1 + 1
    assert weyl_mul(d1 * d1, t1) == t1 * d1 * d1 + d1 * 2
    T1, D2 = WeylOp.t(2, 1), WeylOp.d(2, 2)
    assert weyl_mul(T1, D2) == WeylOp(2, {((1, 0), (0, 1)): 1})


def test_commutators():
    assert weyl_commutator(d1, t1) == WeylOp.const(1)
    assert not weyl_commutator(WeylOp.t(2, 1), WeylOp.t(2, 2))
    assert weyl_commutator(t1 * d1, t1) == t1


def test_fourier_examples():
    assert automorphism_apply(t1, ("fourier", [1])) == d1
    assert fourier(d1, [1]) == -t1


def test_exp_example():
    g = MultiPoly(2, {(1, 1): 1})
    assert automorphism_apply(WeylOp.d(2, 1), ("exp", g)) == WeylOp.d(2, 1) + WeylOp.t(2, 2)


def test_exp_rejects_constant_term():
    with pytest.raises(ValueError):
        exp_twist(d1, MultiPoly(1, {(0,): 1, (1,): 1}))


def test_monomial_actions():
    assert apply_to_monomial(d1, (-2,), corner=[1]) == {(-3,): -2}
    assert apply_to_monomial(t1, (-1,), corner=[1]) == {}
    assert apply_to_monomial(t1 * d1, (3,)) == {(3,): 3}
    assert apply_to_monomial(t1 * d1, (Fraction(1, 3),)) == {(Fraction(1, 3),): Fraction(1, 3)}


def test_operator_matrix_identities():
    A = OperatorMatrix([[t1, d1], [d1 * 2, t1 * d1]])
    I = OperatorMatrix.scalar(2, WeylOp.const(1))
    assert opmatrix_compose(A, I, "mul") == A
    assert opmatrix_compose(A, A, "commutator").is_zero()
    assert opmatrix_compose(A, A, "equals") is True


def _apply(u, p):
    out = {}
    for m, c in p.terms.items():
        for k, v in apply_to_monomial(u, m).items():
            out[k] = out.get(k, 0) + c * v
    return MultiPoly(p.n, out)


@given(weyl_ops(2), weyl_ops(2), polys(2))
def test_normal_ordering_matches_composition(u, v, p):
    assert _apply(weyl_mul(u, v), p) == _apply(u, _apply(v, p))


@given(weyl_ops(2), weyl_ops(2), st.sampled_from([(), (1,), (2,), (1, 2)]))
def test_fourier_is_an_algebra_map(u, v, S):
    assert fourier(u * v, S) == fourier(u, S) * fourier(v, S)


@given(weyl_ops(2), st.sampled_from([(), (1,), (1, 2)]))
def test_fourier_has_order_four(u, S):
    w = u
    for _ in range(4):
        w = fourier(w, S)
    assert w == u


@given(weyl_ops(2), weyl_ops(2), polys(2).filter(lambda g: g.constant_term() == 0))
def test_exp_is_an_algebra_map_and_invertible(u, v, g):
    assert exp_twist(u * v, g) == exp_twist(u, g) * exp_twist(v, g)
    assert exp_twist(exp_twist(u, g), -g) == u
