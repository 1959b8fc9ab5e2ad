"""π maps, tensor modules F(P,M) and 𝓕(F(P,M),S), weight windows and diff.

Sign conventions. In a tensor product of superalgebras
``(a⊗b)(c⊗d) = (-1)^{|b||c|} ac⊗bd`` and on modules
``(a⊗b)(p⊗v) = (-1)^{|b||p|} ap⊗bv``.

The π map used throughout is

    π(t^α ξ_I ∂_i) = t^α ξ_I ∂_i ⊗ 1 + Σ_s (-1)^{|t_s|(|I|-1)} ∂_s(t^α ξ_I) ⊗ E_{s,i},

the sign depending on the summation index ``s``; ``scripts/pi_sign_audit.py``
shows it is one of exactly two rules (linear mod 2 in the obvious parities)
for which π is a homomorphism.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .algebra import Element, TensorAlgebra, add_into
from .core import VectorField, mono_deriv
from .enveloping import k_bracket
from .errors import NotMaterializable, SignatureMismatch, WindowTooLarge
from .linalg import rank, row_basis, reduce_against
from .pbw import PBWAlgebra, gl_enveloping
from .weyl import weyl_algebra

WINDOW_BUDGET = 2000


# -- π ----------------------------------------------------------------------------


def resolved_sign(pf, pi, ps):
    """``(-1)^{|t_s|(|I|-1)}``; ``pf = |I| mod 2``, ``pi = |t_i|``, ``ps = |t_s|``."""
    return -1 if ps and not pf else 1


def displayed_sign(pf, pi, ps):
    """``(-1)^{|t_i|(|I|-1)}``, kept for the audit (it fails the homomorphism test)."""
    return -1 if pi and not pf else 1


def parity_twisted_sign(pf, pi, ps):
    """``(-1)^{|t_i| + |f||t_s|}``: the other passing rule, related to
    :func:`resolved_sign` by ``E_{s,i} ↦ (-1)^{|s|+|i|} E_{s,i}``."""
    return -1 if (pi + pf * ps) % 2 else 1


def _unit_row(m, i):
    return tuple(int(k == i) for k in range(1, m + 1))


class PiMap:
    """``π : W_{m,n} → K_{m,n} ⊗ U(gl_{m,n})`` with a pluggable sign rule."""

    def __init__(self, m, n, sign_rule=resolved_sign):
        self.m, self.n = m, n
        self.K = weyl_algebra(m, n)
        self.U = gl_enveloping(m, n)
        self.T = TensorAlgebra(self.K, self.U)
        self.sign_rule = sign_rule
        self._cache = {}

    def key_terms(self, key):
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        m = self.m
        alpha, odd, i = key
        z = (0,) * m
        dk = (_unit_row(m, i), ()) if i <= m else (z, (i - m,))
        out = {((alpha, odd) + dk, ()): Fraction(1)}
        pf, pi = len(odd) % 2, int(i > m)
        for s in range(1, m + self.n + 1):
            c, res = mono_deriv((alpha, odd), s, m)
            if c:
                sg = self.sign_rule(pf, pi, int(s > m))
                k = ((res[0], res[1], z, ()), ((s, i),))
                out[k] = out.get(k, 0) + sg * c
        out = {k: v for k, v in out.items() if v}
        self._cache[key] = out
        return out

    def __call__(self, x):
        if (x.m, x.n) != (self.m, self.n):
            raise SignatureMismatch(f"field of W({x.m},{x.n}) given to π of W({self.m},{self.n})")
        acc = {}
        for key, c in x.terms.items():
            add_into(acc, self.key_terms(key), c)
        return Element(self.T, acc)


_PI = {}


def pi_map(m, n):
    if (m, n) not in _PI:
        _PI[(m, n)] = PiMap(m, n)
    return _PI[(m, n)]


def pi_w(x):
    return pi_map(x.m, x.n)(x)


def pi_homomorphism_failures(m, n, max_degree, sign_rule=resolved_sign):
    """Basis pairs ``(x, y)`` with ``π([x,y]) ≠ [π(x), π(y)]``."""
    from .core import basis_fields, bracket_w

    pi = PiMap(m, n, sign_rule)
    B = basis_fields(m, n, max_degree)
    images = {x: pi(x) for x in B}
    fails = []
    for a, x in enumerate(B):
        for y in B[a:]:
            if pi(bracket_w(x, y)) != images[x].bracket(images[y]):
                fails.append((x, y))
    return fails


# -- Levi π ----------------------------------------------------------------------------


def k_enveloping(spec):
    """U(k) with letters ``(a, b)`` (ambient indices, all even)."""
    ks = set(spec.k_basis())
    return PBWAlgebra(
        f"k{spec.blocks}",
        sort_key=lambda y: y,
        parity=lambda y: 0,
        bracket=k_bracket,
        valid=lambda y: y in ks,
    )


class PiSecond:
    """``π : k^ ⊕ A_{q,n} → K_{q,n} ⊗ U(gl_{q,n}) ⊗ U(k)`` on the letters of an
    :class:`~wittsuper.enveloping.EnvelopingAlgebra`."""

    def __init__(self, alg):
        self.alg = alg
        q, n = alg.q, alg.n
        self.pi = PiMap(q, n)
        self.Uk = k_enveloping(alg.spec)
        self.T = TensorAlgebra(self.pi.T, self.Uk)

    def letter(self, y):
        self.alg.check_letter(y)
        z = (0,) * self.alg.q
        if y[0] == "A":
            return Element(self.T, {(((y[1], y[2], z, ()), ()), ()): 1})
        if y[0] == "K":
            return Element(self.T, {(((y[2], y[3], z, ()), ()), (y[1],)): 1})
        terms = self.pi.key_terms((y[1], y[2], y[3]))
        return Element(self.T, {(k, ()): c for k, c in terms.items()})

    def lie(self, terms):
        out = Element(self.T)
        for y, c in terms.items():
            out = out + self.letter(y) * c
        return out

    def failures(self, letters):
        fails = []
        for a, y in enumerate(letters):
            for z in letters[a:]:
                lhs = self.lie(self.alg.bracket_letters(y, z))
                rhs = self.letter(y).bracket(self.letter(z))
                if lhs != rhs:
                    fails.append((y, z))
        return fails


# -- module building blocks -----------------------------------------------------------


def _sparse_scale(vec, c):
    return {k: v * c for k, v in vec.items()}


class TensorModule:
    """``F(P, M) = (P ⊗ M)^π`` for a descriptor ``P`` over K_{m,n} and a
    gl_{m,n}-module ``M``; labels are pairs ``(p, v)``."""

    def __init__(self, P, M):
        if (P.m, P.n) != (M.m, M.n):
            raise SignatureMismatch("P and M have different signatures")
        self.P, self.M = P, M
        self.m, self.n = P.m, P.n
        self.pi = pi_map(self.m, self.n)
        self._key_cache = {}

    def parity_of(self, lab):
        return (self.P.vector_parity(lab[0]) + self.M.parity_of(lab[1])) % 2

    def weight(self, lab):
        return tuple(a + b for a, b in zip(self.P.weight(lab[0]), self.M.hweight(lab[1])))

    def hweights_of_M(self):
        M = self.M
        if hasattr(M, "weights"):
            return sorted({M.hweight(k) for k in range(M.dim)})
        if getattr(M, "index_map", None) is not None and all(
            M.index_map[a] > M.desc.m for a in range(M.m)
        ):
            return [tuple(Fraction(c) for c in bits) for bits in product((0, 1), repeat=M.m)]
        raise NotMaterializable("cannot enumerate the weights of M")

    def anchor(self):
        nus = self.hweights_of_M()
        return tuple(a + b for a, b in zip(self.P.origin(), nus[0])) if nus else self.P.origin()

    def labels_of_weight(self, gamma):
        gamma = tuple(Fraction(c) for c in gamma)
        out = []
        for nu in self.hweights_of_M():
            mu = tuple(a - b for a, b in zip(gamma, nu))
            ps = self.P.labels_of_weight(mu)
            if not ps:
                continue
            for v in self.M.labels_of_hweight(nu):
                out.extend((p, v) for p in ps)
        return sorted(out, key=repr)

    # -- action ---------------------------------------------------------------------

    def act_tensor_key(self, key, lab):
        wkey, word = key
        p, v = lab
        pv = self.P.act_key(wkey, p)
        if not pv:
            return {}
        mv = self.M.act_word(word, {v: Fraction(1)})
        if not mv:
            return {}
        out = {}
        for p2, a in pv.items():
            sign = -1 if (word and self.pi.U.parity(word) and self.P.vector_parity(p)) else 1
            for v2, b in mv.items():
                out[(p2, v2)] = out.get((p2, v2), 0) + sign * a * b
        return out

    def act_field_key(self, fkey, lab):
        ck = (fkey, lab)
        hit = self._key_cache.get(ck)
        if hit is None:
            hit = {}
            for tk, c in self.pi.key_terms(fkey).items():
                add_into(hit, self.act_tensor_key(tk, lab), c)
            self._key_cache[ck] = hit
        return hit

    def act_field(self, x, vec):
        out = {}
        for fkey, c in x.terms.items():
            for lab, v in vec.items():
                add_into(out, self.act_field_key(fkey, lab), c * v)
        return out

    def act_letter(self, y, vec):
        """A letter ``("W", alpha, odd, d)`` of U(W_{m,n})."""
        out = {}
        for lab, v in vec.items():
            add_into(out, self.act_field_key((y[1], y[2], y[3]), lab), v)
        return out

    def act_env(self, e, vec):
        """An element of U(W_{m,n}) (words act right to left)."""
        out = {}
        for word, c in e.terms.items():
            w = dict(vec)
            for y in reversed(word):
                w = self.act_letter(y, w)
                if not w:
                    break
            add_into(out, w, c)
        return out


class LeviTensorModule:
    """``𝓕(F(P,M),S) = (P ⊗ M ⊗ S)^π`` over ``k^ ⊕ A_{q,n}``; labels ``(p, v, s)``.

    ``P`` is a K_{q,n} descriptor, ``M`` a gl_{q,n}-module, ``S`` a
    :class:`KModule`. Elements of the enveloping algebra act letter by letter.
    """

    def __init__(self, alg, P, M, S):
        if (P.m, P.n) != (alg.q, alg.n) or (M.m, M.n) != (alg.q, alg.n):
            raise SignatureMismatch("P and M must live over W(q,n)")
        self.alg, self.P, self.M, self.S = alg, P, M, S
        self.F = TensorModule(P, M)
        self.m = alg.q

    def parity_of(self, lab):
        return (self.P.vector_parity(lab[0]) + self.M.parity_of(lab[1])) % 2

    def weight(self, lab):
        return self.F.weight(lab[:2])

    def anchor(self):
        return self.F.anchor()

    def labels_of_weight(self, gamma):
        return [(p, v, s) for (p, v) in self.F.labels_of_weight(gamma) for s in range(self.S.dim)]

    def act_letter(self, y, vec):
        out = {}
        z = (0,) * self.alg.q
        for (p, v, s), c in vec.items():
            if y[0] == "A":
                for p2, a in self.P.act_key((y[1], y[2], z, ()), p).items():
                    out[(p2, v, s)] = out.get((p2, v, s), 0) + c * a
            elif y[0] == "K":
                pv = self.P.act_key((y[2], y[3], z, ()), p)
                sv = self.S.act_unit(y[1], s)
                for p2, a in pv.items():
                    for s2, b in sv.items():
                        out[(p2, v, s2)] = out.get((p2, v, s2), 0) + c * a * b
            else:
                for (p2, v2), a in self.F.act_field_key((y[1], y[2], y[3]), (p, v)).items():
                    out[(p2, v2, s)] = out.get((p2, v2, s), 0) + c * a
        return {k: v for k, v in out.items() if v}

    def act_env(self, e, vec):
        out = {}
        for word, c in e.terms.items():
            w = dict(vec)
            for y in reversed(word):
                w = self.act_letter(y, w)
                if not w:
                    break
            add_into(out, w, c)
        return out


@dataclass
class KModule:
    """A finite-dimensional even module over k (units ``(a, b)``, ambient indices)."""

    spec: object
    dim: int
    action: dict
    name: str = ""

    def act_unit(self, u, s):
        return self.action.get(u, {}).get(s, {})

    def act_unit_vec(self, u, vec):
        out = {}
        for s, c in vec.items():
            add_into(out, self.act_unit(u, s), c)
        return out

    def is_trivial(self):
        return all(not any(col for col in mat.values()) for mat in self.action.values())

    def check_brackets(self):
        units = self.spec.k_basis()
        fails = []
        for a in units:
            for b in units:
                for s in range(self.dim):
                    v = {s: Fraction(1)}
                    lhs = self.act_unit_vec(a, self.act_unit_vec(b, v))
                    add_into(lhs, self.act_unit_vec(b, self.act_unit_vec(a, v)), -1)
                    for u, c in k_bracket(a, b).items():
                        add_into(lhs, self.act_unit(u, s), -c)
                    if lhs:
                        fails.append((a, b, s))
        return fails


def k_scalar_module(spec, c):
    """One-dimensional k-module: each block's identity ``Σ E_aa`` acts by ``c``
    split evenly over the diagonal (only the gl_1 case is a character for every c)."""
    action = {}
    for blk in spec.blocks:
        if len(blk) == 1 and c:
            action[(blk[0], blk[0])] = {0: {0: Fraction(c)}}
    return KModule(spec, 1, action, f"scalar({c})")


def k_natural_module(spec, block):
    """Natural module of one gl block (other blocks act by zero)."""
    blk = tuple(block)
    action = {}
    for a_i, a in enumerate(blk):
        for b_i, b in enumerate(blk):
            action[(a, b)] = {b_i: {a_i: Fraction(1)}}
    return KModule(spec, len(blk), action, f"natural{blk}")


# -- windows ----------------------------------------------------------------------------


@dataclass
class WindowModule:
    """A module restricted to the weight box ``anchor + Π [lo_i, hi_i]``."""

    module: object
    box: tuple
    budget: int = WINDOW_BUDGET
    spaces: dict = field(default_factory=dict)

    def __post_init__(self):
        anchor = self.module.anchor()
        self.box = tuple(tuple(b) for b in self.box)
        if len(self.box) != len(anchor):
            raise ValueError("window box has the wrong number of coordinates")
        total = 0
        for off in product(*(range(lo, hi + 1) for lo, hi in self.box)):
            gamma = tuple(a + o for a, o in zip(anchor, off))
            labs = self.module.labels_of_weight(gamma)
            if labs:
                self.spaces[gamma] = labs
                total += len(labs)
                if total > self.budget:
                    raise WindowTooLarge(f"window exceeds the budget of {self.budget} basis vectors")
        self.total_dim = total

    def weights(self):
        return sorted(self.spaces)

    def basis(self):
        return [lab for g in self.weights() for lab in self.spaces[g]]

    def dims(self):
        return {g: len(v) for g, v in self.spaces.items()}

    def matrix(self, act, gamma):
        """Columns ``act(e_lab)`` for the basis of the weight space ``gamma``."""
        return [act({lab: Fraction(1)}) for lab in self.spaces[gamma]]


def window_box(m, radius):
    return tuple((-radius, radius) for _ in range(m))


# -- diff ---------------------------------------------------------------------------------


class Diff:
    """``diff = Σ_{i≤m} ∂_i ⊗ ξ'_i - Σ_{i≤n} ∂_{m+i} ⊗ t'_i`` on ``P ⊗ P'``.

    ``P`` is a K_{m,n} descriptor and ``P'`` a K_{n,m} descriptor; in K_{n,m}
    unified indexing ``t'_i`` is index ``i`` and ``ξ'_i`` is index ``n+i``.
    Labels are ``(p, p')``, which is how :class:`TensorModule` labels
    ``F(P, P'[λ])`` when ``M`` is a :class:`~wittsuper.glreps.DescriptorGlModule`.
    """

    def __init__(self, P, Pp):
        if (Pp.m, Pp.n) != (P.n, P.m):
            raise SignatureMismatch("P' must be a K(n,m) descriptor")
        self.P, self.Pp = P, Pp
        m, n = P.m, P.n
        K, Kp = weyl_algebra(m, n), weyl_algebra(n, m)
        terms = []
        for i in range(1, m + 1):
            terms.append((K.d(i), Kp.t(n + i), 1, 1))
        for i in range(1, n + 1):
            terms.append((K.d(m + i), Kp.t(i), -1, 0))
        self.terms = terms

    def apply(self, vec):
        out = {}
        for a, b, c, b_par in self.terms:
            for (p, pp), v in vec.items():
                pa = self.P.act(a, {p: Fraction(1)})
                if not pa:
                    continue
                pb = self.Pp.act(b, {pp: Fraction(1)})
                if not pb:
                    continue
                sign = -1 if (b_par and self.P.vector_parity(p)) else 1
                for p2, x in pa.items():
                    for pp2, y in pb.items():
                        out[(p2, pp2)] = out.get((p2, pp2), 0) + sign * c * v * x * y
        return {k: v for k, v in out.items() if v}

    __call__ = apply


def image_rank(diff, labels):
    return rank([diff({lab: Fraction(1)}) for lab in labels])


# -- entry points ---------------------------------------------------------------------------


def build_F(P, M, box, budget=WINDOW_BUDGET):
    """``F(P, M)`` on the weight box ``anchor + box``."""
    return WindowModule(TensorModule(P, M), box, budget)


def build_F2(alg, P, M, S, box, budget=WINDOW_BUDGET):
    """``𝓕(F(P, M), S)`` on the weight box ``anchor + box``."""
    return WindowModule(LeviTensorModule(alg, P, M, S), box, budget)


@dataclass
class DiffReport:
    squares_to_zero: bool
    commutes: bool
    window_dim: int
    fields: int
    failures: list

    def as_dict(self):
        return {
            "squares_to_zero": self.squares_to_zero,
            "commutes": self.commutes,
            "window_dim": self.window_dim,
            "fields": self.fields,
            "failures": self.failures,
        }


def diff_op(P, Pp):
    return Diff(P, Pp)


def check_diff(P, Pp, level, box, degree=3, budget=WINDOW_BUDGET):
    """``diff² = 0`` and ``diff ∘ π(x) = (-1)^{|x|} π(x) ∘ diff`` on a window of
    ``F(P, P'[level])``, for every basis field ``x`` of degree at most ``degree``."""
    from .core import basis_fields
    from .glreps import DescriptorGlModule

    F = TensorModule(P, DescriptorGlModule(Pp, P.m, P.n, level))
    window = WindowModule(F, box, budget)
    diff = Diff(P, Pp)
    fields = basis_fields(P.m, P.n, degree)
    failures = []
    square = True
    for lab in window.basis():
        e = {lab: Fraction(1)}
        de = diff(e)
        if diff(de):
            square = False
            failures.append(["square", repr(lab)])
        for x in fields:
            lhs = diff(F.act_field(x, e))
            add_into(lhs, F.act_field(x, de), 1 if x.parity() else -1)
            if lhs:
                failures.append(["commutator", repr(lab), str(x)])
    commutes = not any(f[0] == "commutator" for f in failures)
    return DiffReport(square, commutes, window.total_dim, len(fields), failures[:10])


def annihilates(module, window, element):
    """Does ``element`` (of the enveloping algebra acting on ``module``) kill every window basis vector?"""
    return all(not module.act_env(element, {lab: Fraction(1)}) for lab in window.basis())


def omega_bar_r0(alg, P, M, S, box, x, j=1, exps=2, r_max=6, confirm=2):
    """Smallest ``r`` from which ``ω̄_{α,β,I,x,r,j}`` annihilates the window of
    ``𝓕(F(P,M),S)`` for all ``|α|, |β| ≤ exps`` and all ``I`` (checked up to ``r + confirm``).

    Returns ``(r0, table)`` with ``table[r]`` the annihilation verdict; ``r0`` is
    None if no ``r ≤ r_max`` works.
    """
    from itertools import combinations

    from .enveloping import build_omega_bar

    F = LeviTensorModule(alg, P, M, S)
    window = WindowModule(F, box)
    rows = [a for a in product(range(exps + 1), repeat=alg.q) if sum(a) <= exps]
    subsets = [I for k in range(alg.n + 1) for I in combinations(range(1, alg.n + 1), k)]
    table = {}
    for r in range(r_max + confirm + 1):
        table[r] = all(
            annihilates(F, window, build_omega_bar(alg, a, b, I, x, r, j))
            for a in rows
            for b in rows
            for I in subsets
        )
    r0 = None
    for r in range(r_max + 1):
        if all(table[s] for s in range(r, r + confirm + 1)):
            r0 = r
            break
    return r0, table, window.total_dim
