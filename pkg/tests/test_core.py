from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from strategies import homogeneous_field, polys
from wittsuper.core import (
    GlElement,
    SuperPoly,
    TildeElement,
    VectorField,
    apply_field,
    basis_fields,
    bracket_gl,
    bracket_tilde,
    bracket_w,
    monomials,
    supertrace,
    tau,
)
from wittsuper.errors import OverlappingSets, SignatureMismatch, SizeMismatch


def inversions(seq):
    return sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])


def test_tau_examples():
    assert tau((), ()) == 0
    assert tau((2,), (1,)) == 1
    assert tau((1, 3), (2, 4)) == 1
    with pytest.raises(OverlappingSets):
        tau((1,), (1, 2))


@given(st.sets(st.integers(1, 7), max_size=4), st.sets(st.integers(1, 7), max_size=4))
def test_tau_is_inversion_count(I, J):
    J = J - I
    assert tau(I, J) == inversions(sorted(I) + sorted(J))


def test_products():
    t1 = SuperPoly.t(1, 2, 1)
    x1, x2 = SuperPoly.xi(1, 2, 1), SuperPoly.xi(1, 2, 2)
    assert t1 * t1 == SuperPoly.monomial(1, 2, (2,))
    assert x1 * x1 == 0
    assert x2 * x1 == SuperPoly.monomial(1, 2, (0,), (1, 2), -1)


def _grassmann_oracle(f, g, n):
    """Multiply by expanding every odd monomial into a word and sorting it with sign."""
    out = {}
    for (a, I), c in f.terms.items():
        for (b, J), e in g.terms.items():
            word = list(I) + list(J)
            if len(set(word)) < len(word):
                continue
            sign = -1 if inversions(word) % 2 else 1
            key = (tuple(x + y for x, y in zip(a, b)), tuple(sorted(word)))
            out[key] = out.get(key, 0) + sign * c * e
    return {k: v for k, v in out.items() if v}


@given(st.data())
def test_product_matches_word_sorting(data):
    f, g = data.draw(polys(1, 3)), data.draw(polys(1, 3))
    assert (f * g).terms == _grassmann_oracle(f, g, 3)


@given(st.data())
def test_product_associative(data):
    f, g, h = (data.draw(polys(1, 2)) for _ in range(3))
    assert (f * g) * h == f * (g * h)


def test_derivations():
    assert SuperPoly.monomial(1, 0, (2,)).deriv(1) == SuperPoly.monomial(1, 0, (1,), coeff=2)
    x12 = SuperPoly.monomial(1, 2, (0,), (1, 2))
    assert x12.deriv(2) == SuperPoly.xi(1, 2, 2)
    x = VectorField.basis(1, 2, (1,), (), 3)
    f = SuperPoly.monomial(1, 2, (0,), (1, 2), -1)  # ξ_2ξ_1
    assert apply_field(x, f) == SuperPoly.monomial(1, 2, (1,), (1,))


@given(st.data())
def test_fields_are_superderivations(data):
    m, n = 1, 2
    x = data.draw(homogeneous_field(m, n))
    f, g = data.draw(polys(m, n, max_terms=1)), data.draw(polys(m, n, max_terms=1))
    sign = -1 if (x.parity() and f.parity()) else 1
    assert apply_field(x, f * g) == apply_field(x, f) * g + f * apply_field(x, g) * sign


def test_bracket_examples():
    d1 = VectorField.partial(1, 1, 1)
    e1 = VectorField.euler(1, 1, 1)
    assert bracket_w(d1, e1) == d1
    # x = ∂_ξ + ξ∂_t is odd and x∘x = ∂_t, so [x, x] = 2∂_t
    x = VectorField.partial(1, 1, 2) + VectorField.basis(1, 1, (0,), (1,), 1)
    assert x.parity() == 1
    assert bracket_w(x, x) == 2 * VectorField.partial(1, 1, 1)


@pytest.mark.parametrize("m,n", [(1, 1), (2, 1), (1, 2)])
def test_euler_bracket_is_weight(m, n):
    for y in basis_fields(m, n, 3):
        (alpha, odd, j), = y.terms
        for i in range(1, m + 1):
            coeff = alpha[i - 1] - (i == j)
            assert bracket_w(VectorField.euler(m, n, i), y) == y * coeff


def _test_polys(m, n, deg=4):
    return [SuperPoly(m, n, {mono: 1}) for mono in monomials(m, n, deg)]


@given(st.data())
def test_bracket_matches_operator_commutator(data):
    """[x,y] acting on A equals x∘y − (−1)^{|x||y|} y∘x (operator-composition oracle)."""
    m, n = data.draw(st.sampled_from([(1, 1), (2, 1), (1, 2)]))
    x, y = data.draw(homogeneous_field(m, n)), data.draw(homogeneous_field(m, n))
    sign = -1 if (x.parity() and y.parity()) else 1
    b = bracket_w(x, y)
    for f in _test_polys(m, n, 3):
        assert apply_field(b, f) == apply_field(x, apply_field(y, f)) - apply_field(y, apply_field(x, f)) * sign


@given(st.data())
def test_super_jacobi_random(data):
    m, n = data.draw(st.sampled_from([(1, 1), (2, 2), (0, 3)]))
    x, y, z = (data.draw(homogeneous_field(m, n)) for _ in range(3))
    px, py, pz = x.parity(), y.parity(), z.parity()
    s = lambda a, b: -1 if (a and b) else 1
    lhs = bracket_w(x, bracket_w(y, z))
    rhs = bracket_w(bracket_w(x, y), z) + bracket_w(y, bracket_w(x, z)) * s(px, py)
    assert lhs == rhs
    assert bracket_w(x, y) == bracket_w(y, x) * (-s(px, py))


def test_signature_checks():
    with pytest.raises(SignatureMismatch):
        bracket_w(VectorField.partial(1, 1, 1), VectorField.partial(2, 1, 1))
    with pytest.raises(SignatureMismatch):
        VectorField.basis(1, 1, (0,), (), 3)


def test_tilde_examples():
    m, n = 2, 0
    d1 = TildeElement(field=VectorField.partial(m, n, 1))
    t1 = TildeElement(func=SuperPoly.t(m, n, 1))
    t2 = TildeElement(func=SuperPoly.t(m, n, 2))
    one = TildeElement(func=SuperPoly.one(m, n))
    assert bracket_tilde(d1, t1) == one
    assert bracket_tilde(t1, t2) == TildeElement(func=SuperPoly(m, n))
    e1 = TildeElement(field=VectorField.euler(m, n, 1))
    t1sq = SuperPoly.monomial(m, n, (2, 0))
    assert bracket_tilde(e1, TildeElement(func=t1sq)) == TildeElement(func=t1sq * 2)
    assert bracket_tilde(t1, d1) == TildeElement(func=SuperPoly.one(m, n) * -1)


def test_gl_examples():
    m, n = 2, 1
    E = lambda i, j: GlElement.unit(m, n, i, j)
    assert supertrace(E(1, 1)) == 1 and supertrace(E(3, 3)) == -1
    assert bracket_gl(E(1, 2), E(2, 1)) == E(1, 1) - E(2, 2)
    assert bracket_gl(E(1, 3), E(3, 1)) == E(1, 1) + E(3, 3)
    with pytest.raises(SizeMismatch):
        E(4, 1)


def _matrix(x, N):
    return [[x.entries.get((i, j), Fraction(0)) for j in range(1, N + 1)] for i in range(1, N + 1)]


@given(st.data())
def test_gl_bracket_matches_matrix_supercommutator(data):
    m, n = 1, 2
    N = m + n
    units = [(i, j) for i in range(1, N + 1) for j in range(1, N + 1)]
    a, b = data.draw(st.sampled_from(units)), data.draw(st.sampled_from(units))
    x, y = GlElement.unit(m, n, *a), GlElement.unit(m, n, *b)
    X, Y = _matrix(x, N), _matrix(y, N)
    XY = [[sum(X[i][k] * Y[k][j] for k in range(N)) for j in range(N)] for i in range(N)]
    YX = [[sum(Y[i][k] * X[k][j] for k in range(N)) for j in range(N)] for i in range(N)]
    sign = -1 if (x.parity() and y.parity()) else 1
    expected = [[XY[i][j] - sign * YX[i][j] for j in range(N)] for i in range(N)]
    assert _matrix(bracket_gl(x, y), N) == expected
    assert supertrace(bracket_gl(x, y)) == 0
