"""Hypothesis strategies shared across the test modules."""

from hypothesis import strategies as st

from wittsuper.core import SuperPoly, VectorField


@st.composite
def signatures(draw, max_m=2, max_n=2):
    m = draw(st.integers(0, max_m))
    n = draw(st.integers(0 if m else 1, max_n))
    return m, n


@st.composite
def monomials(draw, m, n, max_deg=3):
    alpha = tuple(draw(st.lists(st.integers(0, max_deg), min_size=m, max_size=m)))
    odd = tuple(sorted(draw(st.sets(st.integers(1, n), max_size=n)))) if n else ()
    return alpha, odd


@st.composite
def polys(draw, m, n, max_terms=3, max_deg=3):
    keys = draw(st.lists(monomials(m, n, max_deg), min_size=1, max_size=max_terms))
    coeffs = draw(st.lists(st.integers(-3, 3), min_size=len(keys), max_size=len(keys)))
    return SuperPoly(m, n, dict(zip(keys, coeffs)))


@st.composite
def basis_field(draw, m, n, max_deg=2):
    alpha, odd = draw(monomials(m, n, max_deg))
    d = draw(st.integers(1, m + n))
    return VectorField.basis(m, n, alpha, odd, d, draw(st.integers(1, 3)))


@st.composite
def homogeneous_field(draw, m, n, max_deg=2, max_terms=2):
    """Sum of basis fields of one parity."""
    first = draw(basis_field(m, n, max_deg))
    p = first.parity()
    out = first
    for _ in range(draw(st.integers(0, max_terms - 1))):
        y = draw(basis_field(m, n, max_deg))
        if y.parity() == p:
            out = out + y
    return out
