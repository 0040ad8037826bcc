from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from exptensor.exactcore import MultiPoly
from exptensor.glnmod import exterior, one_dim
from exptensor.slpresent import e, h, sl_basis, sl_bracket
from exptensor.tensormod import (TensorContext, TensorVector, act_corner, act_polynomial_model,
                                 coherent_checks, derham_check, derham_d, exterior_context,
                                 known_submodule_check, model_equivalence_check, simplicity_witness,
                                 weight_window_witness, whittaker_check, witten_compare)
from strategies import small_fracs


def subsets(n):
    return [S for k in range(n + 1) for S in combinations(range(1, n + 1), k)]


def t(n, i):
    return MultiPoly.variable(n, i)


def test_context_validation():
    with pytest.raises(ValueError):
        TensorContext.make(one_dim(0, 2), (3,))
    with pytest.raises(ValueError):
        TensorContext.make(one_dim(0, 1), (), MultiPoly(1, {(0,): 1, (1,): 1}))
    ctx = TensorContext.make(one_dim(0, 1), (1,))
    with pytest.raises(ValueError):
        TensorVector.basis(ctx, (0,))


def test_h_on_exponential():
    a = Fraction(1, 3)
    ctx = TensorContext.make(one_dim(a, 1), (), t(1, 1))
    w = act_corner(h(1), TensorVector.basis(ctx, (0,)))
    assert w.terms == {((1,), 0): -1, ((0,), 0): a - 1}


@given(st.integers(0, 8), small_fracs)
def test_raising_coefficient(m, a):
    ctx = TensorContext.make(one_dim(a, 1), ())
    w = act_corner(e(1, 2), TensorVector.basis(ctx, (m,)))
    c = m * (m + 1 - 2 * a)
    assert w.terms == ({((m - 1,), 0): c} if c else {})


def test_corner_quotient():
    ctx = TensorContext.make(one_dim(0, 1), (1,))
    assert not act_corner(e(2, 1), TensorVector.basis(ctx, (-1,)))


@given(st.integers(1, 8))
def test_polynomial_model_fourier_image(k):
    ctx = TensorContext.make(one_dim(Fraction(2, 7), 1), (1,))
    assert act_polynomial_model(e(2, 1), {((k,), 0): 1}, ctx) == {((k - 1,), 0): -k}


def test_polynomial_model_multiplication():
    ctx = TensorContext.make(one_dim(0, 2), ())
    assert act_polynomial_model(e(3, 1), {((1, 2), 0): 3}, ctx) == {((2, 2), 0): -3}


def test_weights_read_off_table():
    V = exterior(1, 2)
    ctx = TensorContext.make(V, (1,))
    for l in range(V.dim):
        img = act_polynomial_model(h(2), {((0, 0), l): 1}, ctx)
        c = V.weights[l][1] - 1
        assert img == ({((0, 0), l): c} if c else {})


@pytest.mark.parametrize("V,S,g,N", [
    (one_dim(0, 1), (1,), None, 5),
    (exterior(1, 2), (2,), t(2, 1), 4),
    (one_dim(Fraction(1, 2), 2), (1, 2), None, 4),
])
def test_model_equivalence(V, S, g, N):
    v = model_equivalence_check(TensorContext.make(V, S, g), N)
    assert v.ok, v.failures[:2]


def test_model_equivalence_detects_corruption():
    ctx = TensorContext.make(one_dim(0, 1), (1,))
    assert not model_equivalence_check(ctx, 5, scale=lambda k: 2 ** k).ok


def test_model_order_when_g_touches_s():
    ctx = TensorContext.make(one_dim(0, 2), (1,), t(2, 1) * t(2, 2))
    v = model_equivalence_check(ctx, 3)
    assert v.ok and v.info["order"] == "psi_theta" and not v.info["orders_agree"]
    assert not model_equivalence_check(ctx, 3, order="theta_psi").ok


def _random_vector(ctx, data):
    from exptensor.tensormod import corner_box
    box = corner_box(ctx.n, ctx.S, 3)
    terms = data.draw(st.dictionaries(st.tuples(st.sampled_from(box), st.integers(0, ctx.V.dim - 1)),
                                      small_fracs, max_size=3))
    return TensorVector(ctx, terms)


@given(st.data(), st.sampled_from(subsets(2)), st.sampled_from([None, "t1", "t1*t2"]))
def test_corner_action_is_a_representation(data, S, g):
    gg = {None: None, "t1": t(2, 1), "t1*t2": t(2, 1) * t(2, 2)}[g]
    ctx = TensorContext.make(exterior(1, 2), S, gg)
    w = _random_vector(ctx, data)
    x, y = data.draw(st.sampled_from(sl_basis(2))), data.draw(st.sampled_from(sl_basis(2)))
    lhs = TensorVector(ctx)
    for z, c in sl_bracket(x, y, 2).items():
        lhs = lhs + act_corner(z, w) * c
    assert lhs == act_corner(x, act_corner(y, w)) - act_corner(y, act_corner(x, w))


@given(st.sampled_from(subsets(2)), st.tuples(st.integers(0, 3), st.integers(0, 3)))
def test_weightness_iff_g_zero(S, k):
    # stay off the corner boundary, where the quotient drops the shifted term
    m = tuple(-2 - x if i in S else x for i, x in enumerate(k, 1))
    plain = TensorContext.make(one_dim(Fraction(1, 3), 2), S)
    img = act_corner(h(1), TensorVector.basis(plain, m))
    assert set(img.terms) <= {(m, 0)}
    twisted = TensorContext.make(one_dim(Fraction(1, 3), 2), S, t(2, 1))
    img = act_corner(h(1), TensorVector.basis(twisted, m))
    assert any(mm != m for (mm, _) in img.terms)


def test_simplicity_examples():
    for g in (None, t(1, 1)):
        assert simplicity_witness(TensorContext.make(one_dim(Fraction(1, 3), 1), (), g)).verdict == "simple_witnessed"
    w = simplicity_witness(TensorContext.make(one_dim(0, 1), (1,)))
    assert w.verdict == "proper_submodule" and w.basis == [((-1,), 0)]
    assert simplicity_witness(TensorContext.make(one_dim(Fraction(4, 3), 2), (1, 2))).verdict == "simple_witnessed"


def test_box_straddles_critical_level():
    w = simplicity_witness(TensorContext.make(one_dim(-2, 2), (1,)), 6)
    assert w.verdict == "proper_submodule" and w.info["box"] >= 9


def test_tprime():
    v = known_submodule_check(TensorContext.make(one_dim(0, 2), (1,)), "Tprime", 4)
    assert v.ok and v.info["status"] == "proper"
    v = known_submodule_check(TensorContext.make(one_dim(0, 1), ()), "Tprime", 4)
    assert v.ok and v.info["status"] == "everything"


@pytest.mark.parametrize("S", subsets(2))
def test_derham_image_submodule(S):
    ctx = exterior_context(2, S, t(2, 1) * t(2, 2))
    assert known_submodule_check(ctx, ("derham_image", 1), 3).ok


def test_d_of_one():
    assert derham_d(exterior_context(2), {((0, 0), 0): 1}) == {((1, 0), 1): 1, ((0, 1), 2): 1}
    # on the Fourier side with g = t1 this is dg = dt1
    ctx = exterior_context(2, (1, 2), t(2, 1))
    assert derham_d(ctx, {((0, 0), 0): 1}) == {((0, 0), 1): 1}


@given(st.data(), st.sampled_from(subsets(2)))
def test_d_squared_zero(data, S):
    ctx = exterior_context(2, S, t(2, 1) * t(2, 2))
    terms = data.draw(st.dictionaries(st.tuples(st.tuples(st.integers(0, 3), st.integers(0, 3)),
                                                st.integers(0, 3)), small_fracs, max_size=4))
    assert derham_d(ctx, derham_d(ctx, terms)) == {}


def test_derham_equivariance_example():
    assert derham_check(exterior_context(2, (1,)), 3).ok


@pytest.mark.parametrize("g", [MultiPoly.zero(2), t(2, 1), t(2, 1) * t(2, 2)])
def test_witten(g):
    assert witten_compare(g, 2, 3).ok


def test_whittaker_examples():
    assert whittaker_check((2, 3, 1), (2,), exterior(1, 2), 0).ok
    v = whittaker_check((2, 3), (1, 2), exterior(1, 2), 0)
    assert v.ok and v.info["pairs"] == 2
    with pytest.raises(ValueError, match=r"\(1, 2\)"):
        whittaker_check((2, 3, 1), (2,), exterior(1, 2), 1)


def test_whittaker_character_value():
    ctx = TensorContext.make(exterior(1, 2), (2,), MultiPoly(2, {(1, 0): 2, (0, 1): 3}))
    assert act_polynomial_model(e(1, 2), {((0, 0), 0): 1}, ctx) == {((0, 0), 0): -6}


def test_coherent_example():
    v = coherent_checks(exterior(1, 2), (1,), (Fraction(1, 2), Fraction(1, 3)), 2)
    assert v.ok, v.failures[:3]


def test_weight_window_on_exterior():
    ctx = TensorContext.make(exterior(1, 2), ())
    assert weight_window_witness(ctx, 3).verdict == "proper_submodule"
