from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from wittsuper.descriptors import ModuleDescriptor, parse_descriptor, sum_partials_window
from wittsuper.errors import GradationError, UnknownTag
from wittsuper.glreps import (
    DescriptorGlModule,
    fundamental_module,
    gl0_character,
    gl0_module,
    is_simple,
    kac_module,
    radical,
    radical_by_sweep,
    simple_top,
    str_level,
    str_module,
    trivial_module,
)
from wittsuper.linalg import rank


def test_str_values():
    S = str_module(2, 1)
    assert S.act_unit((1, 1), 0) == {0: 1}
    assert S.act_unit((3, 3), 0) == {0: -1}
    assert not S.check_brackets()


def test_character_must_be_gl0_character():
    with pytest.raises(GradationError):
        gl0_character(2, 1, (2, 0, 3))
    assert gl0_character(2, 1, (2, 2, 3)).dim == 1


@pytest.mark.parametrize("m,n", [(1, 1), (2, 1), (1, 2)])
def test_kac_dimension(m, n):
    V = trivial_module(m, n)
    K = kac_module(V)
    assert K.dim == 2 ** (m * n) * V.dim
    assert not K.check_brackets()


def test_kac_of_natural_gl0_module():
    # V = natural gl_1 ⊕ gl_1 module: E_11 acts by 1 on the first vector, E_22 by 1 on the second
    V = gl0_module(1, 1, [(1, 0), (0, 1)], {})
    K = kac_module(V)
    assert K.dim == 4 and not K.check_brackets()


def test_trivial_kac_top():
    K = kac_module(trivial_module(1, 1))
    L = simple_top(K)
    assert K.dim == 2 and L.dim == 1
    assert not is_simple(K) and is_simple(L)


@given(st.integers(-3, 3), st.integers(-3, 3))
def test_radical_two_routes(a, b):
    K = kac_module(gl0_character(1, 1, (a, b)))
    rad = radical(K)
    sweep, _ = radical_by_sweep(K)
    rows_a, rows_b = [v for _, v in rad], [v for _, v in sweep]
    assert rank(rows_a) == rank(rows_b) == rank(rows_a + rows_b)
    L = simple_top(K)
    assert L.dim <= K.dim
    assert (L.dim == K.dim) == (not rad)
    # typical iff a + b != 0 for gl(1|1)
    assert (L.dim == K.dim) == (a + b != 0)


def test_fundamental_levels():
    A = ModuleDescriptor.A(1, 1)  # K_{n,m} with m = n = 1
    assert fundamental_module(A, 1, 1, 1).dim == 2
    zero = fundamental_module(A, 0, 1, 1)
    assert zero.dim == 1
    for u in [(1, 1), (1, 2), (2, 1), (2, 2)]:
        assert not zero.act_unit(u, 0)


@pytest.mark.parametrize("level", [0, 1, 2, 3])
def test_level_is_euler_eigenvalue(level):
    A = ModuleDescriptor.A(1, 2)  # gl_{2,1}
    mod = DescriptorGlModule(A, 2, 1, level)
    for lab in mod.labels():
        total = {}
        for i in range(1, 4):
            for k, c in mod.act_unit((i, i), lab).items():
                total[k] = total.get(k, 0) + c
        assert {k: c for k, c in total.items() if c} == ({lab: Fraction(level)} if level else {})
    assert not mod.check_brackets()


def test_str_inside_a_sigma():
    m, n = 1, 1
    Asig = ModuleDescriptor.A_sigma(n, m)
    mod = fundamental_module(Asig, str_level(m, n), m, n)
    S = str_module(m, n)
    assert mod.dim == 1
    for i in (1, 2):
        assert mod.act_unit((i, i), 0) == S.act_unit((i, i), 0)


def test_a_sigma_support_reflected():
    d = ModuleDescriptor.A_sigma(2, 1)
    for lab in d.basis_window(0, 2):
        assert all(e <= -1 and e.denominator == 1 for e in d.weight(lab))


def test_parse_descriptor():
    d = parse_descriptor("L1/2,P,Q", 3, 1)
    assert [f.kind for f in d.factors] == ["L", "P", "Q"]
    assert parse_descriptor("PiA", 1, 1).parity == 1
    with pytest.raises(UnknownTag):
        parse_descriptor("X", 1, 1)


@given(st.lists(st.sampled_from(["P", "Q", "L1/2", "L1/3"]), min_size=1, max_size=2), st.integers(0, 1))
def test_sum_partials_two_routes(factors, n):
    d = parse_descriptor(",".join(factors), len(factors), n)
    assert d.sum_partials_is_everything() == sum_partials_window(d, radius=2)


@given(st.lists(st.sampled_from(["P", "Q", "L1/2"]), min_size=1, max_size=2), st.integers(1, 2))
def test_descriptor_action_respects_weyl_relations(factors, n):
    from wittsuper.weyl import weyl_algebra

    m = len(factors)
    d = parse_descriptor(",".join(factors), m, n)
    K = weyl_algebra(m, n)
    for lab in d.basis_window(0, 1)[:6]:
        v = {lab: Fraction(1)}
        for i, j in product(range(1, m + n + 1), repeat=2):
            lhs = d.act(K.d(i) * K.t(j), v)
            rhs = d.act(K.d(i), d.act(K.t(j), v))
            assert {k: c for k, c in lhs.items() if c} == {k: c for k, c in rhs.items() if c}
