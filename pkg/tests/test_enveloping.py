from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from wittsuper.algebra import Element
from wittsuper.core import SuperPoly, VectorField, apply_field, monomials
from wittsuper.enveloping import (
    build_omega,
    build_X,
    build_Y,
    check_identity,
    enveloping_w,
    normal_order,
    raw_word,
    reconstruct,
    ubar,
)
from wittsuper.errors import DegreeCapExceeded
from wittsuper.weyl import weyl_algebra


# -- Weyl superalgebra ---------------------------------------------------------


def test_weyl_relations():
    K = weyl_algebra(1, 1)
    assert K.d(1) * K.t(1) == K.t(1) * K.d(1) + K.one()
    assert K.d(2) * K.t(2) == -(K.t(2) * K.d(2)) + K.one()
    e = K.t(1) * K.d(1)
    assert e * e == K.t(1) * K.t(1) * K.d(1) * K.d(1) + e


def _monos(m, n, deg):
    return [SuperPoly(m, n, {mono: 1}) for mono in monomials(m, n, deg)]


@given(st.lists(st.sampled_from(["t1", "t2", "d1", "d2"]), min_size=1, max_size=4),
       st.lists(st.sampled_from(["t1", "t2", "d1", "d2"]), min_size=1, max_size=4))
def test_weyl_product_matches_operator_composition(u, v):
    """Normal-ordered products act on A_{1,1} as the composition of operators."""
    K = weyl_algebra(1, 1)
    gen = {"t1": K.t(1), "t2": K.t(2), "d1": K.d(1), "d2": K.d(2)}

    def word(letters):
        out = K.one()
        for a in letters:
            out = out * gen[a]
        return out

    x, y = word(u), word(v)
    for f in _monos(1, 1, 3):
        assert K.act(x * y, f) == K.act(x, K.act(y, f))


def test_sigma_squared_on_generators():
    K = weyl_algebra(2, 1)
    for i in range(1, 4):
        sign = 1 if i > 2 else -1  # (−1)^{|t_i|+1}
        assert K.sigma(K.sigma(K.t(i))) == K.t(i) * sign


def test_sigma_preserves_relations():
    K = weyl_algebra(1, 2)
    for i, j in product(range(1, 4), repeat=2):
        a, b = K.sigma(K.d(i)), K.sigma(K.t(j))
        expected = K.one() if i == j else Element(K)
        assert a.bracket(b) == expected


# -- U(W) normal order against the action on C[t] ----------------------------------


def _field_of(letter, alg):
    _, alpha, odd, d = letter
    return VectorField.basis(alg.q, alg.n, alpha, odd, alg.spec.ambient_dir(d))


def act_u(e, f):
    """Act with an element of U(W) on a polynomial by composing the letters."""
    out = SuperPoly(f.m, f.n)
    for word, c in e.terms.items():
        g = f
        for y in reversed(word):
            g = apply_field(_field_of(y, e.alg), g)
        out = out + g * c
    return out


def test_normal_order_example():
    U = enveloping_w(1, 0)
    d1, e1 = U.w_letter((0,), (), 1), U.w_letter((1,), (), 1)
    lhs = normal_order(raw_word(U, [d1, e1]))
    assert lhs == U.word([e1, d1]) + U.word([d1])
    assert list(U.word([e1, d1]).terms) == [(e1, d1)]


@given(st.lists(st.tuples(st.integers(0, 2), st.integers(0, 1), st.integers(1, 2)), min_size=1, max_size=3))
def test_normal_order_preserves_action(letters):
    U = enveloping_w(1, 1, max_degree=12)
    word = [U.w_letter((a,), (1,) if o else (), d) for a, o, d in letters]
    raw = raw_word(U, word)
    for f in _monos(1, 1, 4):
        assert act_u(normal_order(raw), f) == act_u(raw, f)


def test_degree_cap():
    U = enveloping_w(1, 0, max_degree=2)
    y = U.w_letter((2,), (), 1)
    with pytest.raises(DegreeCapExceeded):
        normal_order(raw_word(U, [U.w_letter((0,), (), 1), y, y]))


# -- U-bar ----------------------------------------------------------------------


def test_ubar_a_letters_multiply():
    U = ubar(1, 2)
    assert normal_order(raw_word(U, [U.a_letter((1,), (2,)), U.a_letter((2,), (1,))])) == U.a((3,), (1, 2), -1)
    assert U.a((0,), ()) == Element.one(U)


def test_omega_small_r():
    U = enveloping_w(1, 0)
    d, e = U.w_letter((0,), (), 1), U.w_letter((1,), (), 1)
    assert build_omega(U, (0,), (0,), (), (), 0, 1, 1, 1) == U.word([d, d])
    assert build_omega(U, (0,), (0,), (), (), 1, 1, 1, 1) == U.word([e, d]) - U.word([d, e])


def test_omega_kills_polynomials():
    U = enveloping_w(1, 0)
    w = build_omega(U, (0,), (0,), (), (), 2, 1, 1, 1)
    for k in range(9):
        assert act_u(w, SuperPoly.monomial(1, 0, (k,))) == 0


def test_x_y_examples():
    U = ubar(1, 1, m=2, blocks=[(2,)])
    d = 1
    assert build_X(U, (0,), (), d) == U.partial(d)
    assert build_X(U, (1,), (), d) == U.w((1,), (), d) - U.a((1,)) * U.partial(d)
    assert build_Y(U, (0,), (), (2, 2)) == U.k((2, 2))
    assert check_identity(U.w((1,), (), d), reconstruct(U, (1,), (), d=d)).verdict


@pytest.mark.parametrize("alpha,I", [((2,), ()), ((1,), (1,)), ((0,), (1,)), ((3,), (1,))])
def test_reconstruction_identities(alpha, I):
    U = ubar(1, 1, m=2, blocks=[(2,)])
    for d in U.spec.directions():
        assert check_identity(U.w(alpha, I, d), reconstruct(U, alpha, I, d=d)).verdict
    assert check_identity(U.k((2, 2), alpha, I), reconstruct(U, alpha, I, x=(2, 2))).verdict
