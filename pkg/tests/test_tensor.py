from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from strategies import homogeneous_field
from wittsuper.algebra import Element, add_into
from wittsuper.core import SuperPoly, VectorField, apply_field, bracket_w
from wittsuper.descriptors import ModuleDescriptor, parse_descriptor
from wittsuper.enveloping import ubar
from wittsuper.errors import SignatureMismatch, WindowTooLarge
from wittsuper.glreps import DescriptorGlModule, kac_module, gl0_character, str_module, trivial_module
from wittsuper.tensor import (
    Diff,
    LeviTensorModule,
    PiMap,
    PiSecond,
    TensorModule,
    WindowModule,
    build_F,
    check_diff,
    displayed_sign,
    k_natural_module,
    k_scalar_module,
    parity_twisted_sign,
    pi_homomorphism_failures,
    pi_w,
    window_box,
)


def test_pi_of_partial():
    pi = PiMap(2, 1)
    d = VectorField.partial(2, 1, 3)
    assert pi(d) == Element(pi.T, {(((0, 0), (), (0, 0), (1,)), ()): 1})


def test_pi_of_t1_d2():
    pi = PiMap(2, 0)
    x = VectorField.basis(2, 0, (1, 0), (), 2)
    expected = Element(pi.T, {(((1, 0), (), (0, 1), ()), ()): 1, (((0, 0), (), (0, 0), ()), ((1, 2),)): 1})
    assert pi(x) == expected


def test_sign_audit():
    assert pi_homomorphism_failures(1, 1, 2, displayed_sign)
    assert not pi_homomorphism_failures(1, 1, 2)
    assert not pi_homomorphism_failures(1, 2, 2, parity_twisted_sign)


@pytest.mark.parametrize("m,n", [(1, 1), (2, 1), (1, 2)])
def test_pi_homomorphism_degree2(m, n):
    assert not pi_homomorphism_failures(m, n, 2)


def _comm(F, x, y, vec):
    sign = -1 if (x.parity() and y.parity()) else 1
    out = F.act_field(x, F.act_field(y, vec))
    add_into(out, F.act_field(y, F.act_field(x, vec)), -sign)
    return {k: v for k, v in out.items() if v}


MODULES = {
    "A-trivial": (lambda: (ModuleDescriptor.A(1, 1), trivial_module(1, 1))),
    "L-str": (lambda: (parse_descriptor("L1/2", 1, 1), str_module(1, 1))),
    "Q-kac": (lambda: (parse_descriptor("Q", 1, 1), kac_module(gl0_character(1, 1, (2, 3))))),
    "L-fund": (lambda: (parse_descriptor("L1/3", 1, 1), DescriptorGlModule(ModuleDescriptor.A(1, 1), 1, 1, 1))),
}


@given(st.sampled_from(sorted(MODULES)), st.data())
def test_tensor_module_is_a_representation(name, data):
    """x·(y·v) − ± y·(x·v) = [x, y]·v on F(P, M), directly in the module."""
    P, M = MODULES[name]()
    F = TensorModule(P, M)
    x, y = data.draw(homogeneous_field(1, 1)), data.draw(homogeneous_field(1, 1))
    W = WindowModule(F, window_box(1, 1))
    lab = data.draw(st.sampled_from(W.basis()))
    vec = {lab: Fraction(1)}
    lhs = _comm(F, x, y, vec)
    rhs = {k: v for k, v in F.act_field(bracket_w(x, y), vec).items() if v}
    assert lhs == rhs


def test_a_trivial_is_a():
    """F(A, trivial) ≅ A: fields act on t^k ξ_I exactly as on polynomials."""
    F = TensorModule(ModuleDescriptor.A(1, 1), trivial_module(1, 1))
    for x in [VectorField.partial(1, 1, 1), VectorField.basis(1, 1, (2,), (1,), 2), VectorField.basis(1, 1, (1,), (), 1)]:
        for k in range(4):
            for odd in ((), (1,)):
                f = SuperPoly.monomial(1, 1, (k,), odd)
                got = F.act_field(x, {(((Fraction(k),), odd), 0): Fraction(1)})
                want = apply_field(x, f)
                assert {(tuple(int(e) for e in p[0]), p[1]): c for (p, _), c in got.items() if c} == dict(want.terms)


def test_weight_formula():
    P, M = parse_descriptor("L1/2", 1, 1), kac_module(gl0_character(1, 1, (2, 3)))
    F = TensorModule(P, M)
    d1 = VectorField.euler(1, 1, 1)
    for lab in WindowModule(F, window_box(1, 2)).basis():
        out = F.act_field(d1, {lab: Fraction(1)})
        expected = P.weight(lab[0])[0] + M.gl_weight(lab[1])[0]
        assert out == ({lab: expected} if expected else {})


def test_weight_space_dimension_formula():
    P, M = parse_descriptor("L1/2", 1, 1), kac_module(gl0_character(1, 1, (2, 3)))
    F = TensorModule(P, M)
    for gamma, dim in WindowModule(F, window_box(1, 2)).dims().items():
        expected = 0
        for nu in F.hweights_of_M():
            mu = tuple(g - v for g, v in zip(gamma, nu))
            expected += len(P.labels_of_weight(mu)) * len(M.labels_of_hweight(nu))
        assert dim == expected


def test_window_budget():
    F = TensorModule(ModuleDescriptor.A(2, 2), trivial_module(2, 2))
    with pytest.raises(WindowTooLarge):
        build_F(F.P, F.M, window_box(2, 6), budget=50)


def test_signature_mismatch():
    with pytest.raises(SignatureMismatch):
        TensorModule(ModuleDescriptor.A(1, 1), trivial_module(2, 1))
    with pytest.raises(SignatureMismatch):
        Diff(ModuleDescriptor.A(1, 1), ModuleDescriptor.A(2, 1))


def test_diff_m1_n0():
    """diff = ∂_1 ⊗ ξ'_1 on P ⊗ P' with P' over K_{0,1}; it squares to zero."""
    P, Pp = ModuleDescriptor.A(1, 0), ModuleDescriptor.A(0, 1)
    D = Diff(P, Pp)
    for k in range(4):
        v = {(((Fraction(k),), ()), ((), ())): Fraction(1)}
        dv = D(v)
        assert not D(dv)
        assert dv == ({(((Fraction(k - 1),), ()), ((), (1,))): Fraction(k)} if k else {})


@pytest.mark.parametrize("Ps,Pps,level", [("L1/2", "A", 1), ("Q", "A", 2)])
def test_check_diff_small(Ps, Pps, level):
    rep = check_diff(parse_descriptor(Ps, 1, 1), parse_descriptor(Pps, 1, 1), level, window_box(1, 1), degree=2)
    assert rep.squares_to_zero and rep.commutes and rep.window_dim > 0


def test_levi_pi_examples():
    alg = ubar(1, 1, m=2, blocks=[(2,)])
    ps = PiSecond(alg)
    d1 = ps.letter(alg.w_letter((1,), (), 1))
    T = ps.T
    z = (0,)
    expected = Element(T, {((((1,), (), (1,), ()), ()), ()): 1, ((((0,), (), z, ()), ((1, 1),)), ()): 1})
    assert d1 == expected
    h = ps.letter(alg.k_letter((2, 2)))
    assert h == Element(T, {((((0,), (), z, ()), ()), ((2, 2),)): 1})


def test_levi_pi_homomorphism_degree2():
    from wittsuper.suites import levi_letters

    alg = ubar(1, 1, m=2, blocks=[(2,)])
    assert not PiSecond(alg).failures(levi_letters(alg, 2))


def test_k_modules():
    alg = ubar(1, 0, m=3, blocks=[(2, 3)])
    nat = k_natural_module(alg.spec, (2, 3))
    assert nat.dim == 2 and not nat.check_brackets()
    alg1 = ubar(1, 1, m=2, blocks=[(2,)])
    assert k_scalar_module(alg1.spec, 0).is_trivial()
    assert not k_scalar_module(alg1.spec, Fraction(1, 3)).is_trivial()


def test_levi_module_is_a_representation():
    alg = ubar(1, 1, m=2, blocks=[(2,)])
    F = LeviTensorModule(alg, parse_descriptor("L1/2", 1, 1), str_module(1, 1), k_scalar_module(alg.spec, 2))
    W = WindowModule(F, window_box(1, 1))
    from wittsuper.suites import levi_letters

    letters = levi_letters(alg, 1)
    for lab in W.basis()[:4]:
        v = {lab: Fraction(1)}
        for y in letters:
            for z in letters:
                lhs = F.act_env(alg.word([y]).bracket(alg.word([z])), v)
                sign = -1 if (alg.parity((y,)) and alg.parity((z,))) else 1
                rhs = F.act_letter(y, F.act_letter(z, v))
                add_into(rhs, F.act_letter(z, F.act_letter(y, v)), -sign)
                assert {k: c for k, c in lhs.items() if c} == {k: c for k, c in rhs.items() if c}
