import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from wittsuper.core import VectorField, bracket_w
from wittsuper.errors import InvalidTriangularSplit, WeightNotInSupport
from wittsuper.fixtures import CONE_FIXTURES
from wittsuper.geometry import (
    ShadowPartition,
    ShiftedCone,
    SupportSet,
    check_closure_lemmas,
    check_parabolic,
    classify_direction,
    delta_prime,
    extremal_weights,
    format_root,
    is_extremal,
    k_lambda,
    levi_shape,
    parabolic_decomposition,
    root_set,
    shadow,
    sl_embedding,
)
from wittsuper.linalg import in_span

H = Fraction(1, 2)


def cone(base, free=(), plus=()):
    return SupportSet((ShiftedCone(tuple(Fraction(c) for c in base), tuple(free), tuple(plus)),))


def test_root_set_examples():
    assert sorted(root_set(1, 3)) == [(-1,), (1,), (2,), (3,)]
    assert len(delta_prime(2)) == 6
    for m in (1, 2, 3):
        assert (0,) * m not in root_set(m, 3)


def test_sl_embedding():
    imgs = sl_embedding(1)
    assert bracket_w(imgs[("e", (-1,))], imgs[("e", (1,))]) == VectorField.euler(1, 0, 1) * -2


def test_sl_embedding_closes_m2():
    imgs = list(sl_embedding(2).values())
    assert len(imgs) == 8
    vecs = [x.terms for x in imgs]
    for x in imgs:
        for y in imgs:
            assert in_span(vecs, bracket_w(x, y).terms)


def test_direction_examples():
    assert classify_direction(cone((0,), [(1,)]), (0,), (1,)) == "infinite"
    assert classify_direction(cone((0,), (), [(1,)]), (0,), (1,)) == "minus"
    assert classify_direction(cone((0, 0), [(1, 0)], [(0, 1)]), (0, 0), (1, -1)) == "plus"
    with pytest.raises(WeightNotInSupport):
        classify_direction(cone((0,), (), [(1,)]), (-1,), (1,))


def _names(roots):
    return sorted(format_root(a) for a in roots)


def test_shadow_example():
    S = cone((H, 0), [(1, 0)], [(0, -1)])
    sp = shadow(S, S.anchor())
    assert _names(sp.infinite) == ["-e1", "e1"]
    assert _names(sp.plus) == _names([(0, 1), (-1, 1)])
    assert _names(sp.minus) == _names([(0, -1), (1, -1)])
    assert sp.finite == []


def test_single_point_is_flagged():
    S = cone((0, 0))
    sp = shadow(S, (0, 0))
    assert len(sp.finite) == 6 and sp.flags()


@pytest.mark.parametrize("name", sorted(CONE_FIXTURES))
def test_base_point_independence(name):
    S, _ = CONE_FIXTURES[name]
    rng = random.Random(name)
    pts = S.points(S.anchor(), 3)
    ref = shadow(S, S.anchor()).key()
    for p in rng.sample(pts, min(5, len(pts))):
        assert shadow(S, p).key() == ref


def test_k_lambda_examples():
    line = cone((0,), [(1,)])
    assert k_lambda(line, (0,)) == frozenset() == k_lambda(line, (5,))
    ray = cone((0,), (), [(1,)])
    assert k_lambda(ray, (0,)) == frozenset({(-1,)})
    assert k_lambda(ray, (3,)) == frozenset()
    assert is_extremal(ray, (0,)).extremal
    assert not is_extremal(ray, (2,)).extremal


@given(st.integers(0, 4), st.integers(-4, 0))
def test_k_lambda_monotone_along_gamma(a, b):
    S = cone((H, 0), [(1, 0)], [(0, -1)])
    sp = shadow(S, S.anchor())
    lam = (H + a, Fraction(b))
    for alpha in sp.gamma:
        mu = tuple(x - y for x, y in zip(lam, alpha))
        if S.contains(mu):
            assert k_lambda(S, lam) <= k_lambda(S, mu)


def test_parabolic_example():
    S = cone((H, 0), [(1, 0)], [(0, -1)])
    sp = shadow(S, S.anchor())
    pd = parabolic_decomposition(sp, S.anchor(), degree_cap=3)
    assert sorted(pd.zero) == sorted([(-1, 0), (1, 0), (2, 0), (3, 0)])
    assert check_parabolic(pd, 2)
    every = set(root_set(2, 3))
    parts = [set(pd.plus), set(pd.zero), set(pd.minus)]
    assert set().union(*parts) == every
    assert sum(len(p) for p in parts) == len(every)


def test_parabolic_without_infinite_part():
    S = cone((0, 0), (), [(1, 0), (0, 1)])
    sp = shadow(S, (0, 0))
    pd = parabolic_decomposition(sp, (0, 0))
    assert not pd.zero and check_parabolic(pd, 2)


def test_invalid_split():
    S = cone((0, 0), [(1, -1)])
    sp = shadow(S, (0, 0))
    with pytest.raises(InvalidTriangularSplit):
        parabolic_decomposition(sp, (0, 0), tri=([(1, -1)], [(1, -1)]))


def test_closure_laws_at_extremal_weights():
    S = cone((H, 0), [(1, 0)], [(0, -1)])
    sp = shadow(S, S.anchor())
    for lam in extremal_weights(S, 1)[:3]:
        rep = check_closure_lemmas(S, lam, sp=sp)
        assert not rep.closure_k and not rep.closure_kbar and rep.k_formula


def test_levi_shapes():
    e = lambda *c: tuple(c)
    sp = ShadowPartition(2, infinite=[e(1, 0), e(-1, 0)])
    assert levi_shape(sp).q == 1 and levi_shape(sp).blocks == ((2,),)
    full = ShadowPartition(2, infinite=list(delta_prime(2)))
    assert levi_shape(full).q == 2 and levi_shape(full).blocks == ()
    sp3 = ShadowPartition(3, infinite=[e(0, 1, -1), e(0, -1, 1)])
    shape = levi_shape(sp3)
    assert shape.q == 0 and (2, 3) in shape.blocks
