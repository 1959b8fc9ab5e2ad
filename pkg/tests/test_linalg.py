from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from wittsuper.errors import SpanSolveFailure
from wittsuper.linalg import cone_is_pointed, kernel, rank, row_basis, solve_in_span

rows_st = st.lists(
    st.dictionaries(st.integers(0, 4), st.integers(-3, 3), max_size=4),
    min_size=1,
    max_size=5,
)


def gauss_rank(rows, n=5):
    """Plain Fraction elimination, independent of the sparse backend."""
    M = [[Fraction(r.get(j, 0)) for j in range(n)] for r in rows]
    rk, col = 0, 0
    while rk < len(M) and col < n:
        piv = next((i for i in range(rk, len(M)) if M[i][col]), None)
        if piv is None:
            col += 1
            continue
        M[rk], M[piv] = M[piv], M[rk]
        for i in range(len(M)):
            if i != rk and M[i][col]:
                f = M[i][col] / M[rk][col]
                M[i] = [a - f * b for a, b in zip(M[i], M[rk])]
        rk += 1
        col += 1
    return rk


@given(rows_st)
def test_rank_matches_elimination(rows):
    assert rank(rows) == gauss_rank(rows)
    assert len(row_basis(rows)) == rank(rows)


@given(rows_st)
def test_kernel(cols):
    ker = kernel(cols)
    assert len(ker) + rank(cols) == len(cols)
    for v in ker:
        total = {}
        for j, c in v.items():
            for k, e in cols[j].items():
                total[k] = total.get(k, 0) + c * e
        assert not any(total.values())


@given(rows_st, st.lists(st.integers(-2, 2), min_size=5, max_size=5))
def test_solve_in_span(vecs, coeffs):
    target = {}
    for v, c in zip(vecs, coeffs):
        for k, e in v.items():
            target[k] = target.get(k, 0) + c * e
    target = {k: v for k, v in target.items() if v}
    sol = solve_in_span(vecs, target)
    back = {}
    for v, c in zip(vecs, sol):
        for k, e in v.items():
            back[k] = back.get(k, 0) + c * e
    assert {k: v for k, v in back.items() if v} == target


def test_solve_failure():
    with pytest.raises(SpanSolveFailure):
        solve_in_span([{0: 1}], {1: 1})


def test_pointed_cones():
    assert cone_is_pointed([(1, 0), (0, 1)], 2)
    assert not cone_is_pointed([(1, 0), (-1, 0)], 2)
    assert not cone_is_pointed([(1, 1), (-1, 0), (0, -1)], 2)
