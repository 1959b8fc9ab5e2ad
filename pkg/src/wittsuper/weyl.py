"""The Weyl superalgebra K_{m,n} in normal order.

A basis key is ``(a, I, b, J)`` standing for ``t^a xi_I ∂^b ∂_J`` where ``a, b``
are exponent rows for the even variables, ``I`` the ordered odd creation set
and ``J`` the odd derivative set, applied as ``∂_{j_1} ∂_{j_2} ...`` with
``j_1 < j_2 < ...``. Products are formed by right-multiplying with one
generator at a time, which only ever needs the single relation
``[∂_i, t_j] = δ_ij`` (anticommutator for two odd letters).
"""

from functools import lru_cache

from .algebra import Element, add_into
from .core import SuperPoly, mono_deriv, mono_mul
from .errors import SignatureMismatch


class WeylAlgebra:
    def __init__(self, m, n):
        self.m, self.n = m, n
        z = (0,) * m
        self.unit = (z, (), z, ())
        self._gen_cache = {}
        self._mul_cache = {}

    def __eq__(self, other):
        return isinstance(other, WeylAlgebra) and (self.m, self.n) == (other.m, other.n)

    def __hash__(self):
        return hash(("weyl", self.m, self.n))

    def __repr__(self):
        return f"K({self.m},{self.n})"

    @staticmethod
    def parity(key):
        return (len(key[1]) + len(key[3])) % 2

    @staticmethod
    def degree(key):
        """Creation degree minus annihilation degree (the E-eigenvalue shift)."""
        return sum(key[0]) + len(key[1]) - sum(key[2]) - len(key[3])

    def format_key(self, key):
        a, I, b, J = key
        parts = []
        for i, e in enumerate(a, 1):
            parts += [f"t{i}" if e == 1 else f"t{i}^{e}"] if e else []
        parts += [f"x{j}" for j in I]
        for i, e in enumerate(b, 1):
            parts += [f"d{i}" if e == 1 else f"d{i}^{e}"] if e else []
        parts += [f"d{self.m + j}" for j in J]
        return "*".join(parts) if parts else "1"

    # -- generators -----------------------------------------------------------

    def _check_index(self, i):
        if not 1 <= i <= self.m + self.n:
            raise SignatureMismatch(f"index {i} outside 1..{self.m + self.n} for {self!r}")

    def t(self, i):
        """``t_i`` (``xi_{i-m}`` when ``i > m``)."""
        self._check_index(i)
        z = (0,) * self.m
        if i <= self.m:
            return Element(self, {(_unit_row(self.m, i), (), z, ()): 1})
        return Element(self, {(z, (i - self.m,), z, ()): 1})

    def d(self, i):
        """``∂_i`` in the unified index range."""
        self._check_index(i)
        z = (0,) * self.m
        if i <= self.m:
            return Element(self, {(z, (), _unit_row(self.m, i), ()): 1})
        return Element(self, {(z, (), z, (i - self.m,)): 1})

    def one(self):
        return Element.one(self)

    def poly(self, f):
        """Embed a polynomial ``f`` of A_{m,n} as a multiplication operator."""
        if (f.m, f.n) != (self.m, self.n):
            raise SignatureMismatch("polynomial signature differs from the Weyl algebra")
        z = (0,) * self.m
        return Element(self, {(alpha, odd, z, ()): c for (alpha, odd), c in f.terms.items()})

    # -- multiplication -------------------------------------------------------

    def _times_gen(self, key, gen):
        """``key * g`` for a generator ``gen = (kind, i)``, kind in 't', 'x', 'd', 'dx'."""
        hit = self._gen_cache.get((key, gen))
        if hit is not None:
            return hit
        a, I, b, J = key
        kind, i = gen
        out = {}
        if kind == "t":
            out[(_bump(a, i, 1), I, b, J)] = 1
            if b[i - 1]:
                out[(a, I, _bump(b, i, -1), J)] = b[i - 1]
        elif kind == "x":
            # ∂_J xi_j = (-1)^{|J|} xi_j ∂_J + [j in J] (-1)^{#J>j} ∂_{J∖j}
            if i not in I:
                s = (-1) ** (len(J) + sum(1 for k in I if k > i))
                out[(a, tuple(sorted(I + (i,))), b, J)] = s
            if i in J:
                s = (-1) ** sum(1 for k in J if k > i)
                rest = tuple(k for k in J if k != i)
                out[(a, I, b, rest)] = out.get((a, I, b, rest), 0) + s
        elif kind == "d":
            out[(a, I, _bump(b, i, 1), J)] = 1
        else:
            if i not in J:
                s = (-1) ** sum(1 for k in J if k > i)
                out[(a, I, b, tuple(sorted(J + (i,))))] = s
        out = {k: v for k, v in out.items() if v}
        self._gen_cache[(key, gen)] = out
        return out

    def _word(self, key):
        a, I, b, J = key
        word = []
        for i, e in enumerate(a, 1):
            word += [("t", i)] * e
        word += [("x", j) for j in I]
        for i, e in enumerate(b, 1):
            word += [("d", i)] * e
        word += [("dx", j) for j in J]
        return word

    def mul_keys(self, k1, k2):
        hit = self._mul_cache.get((k1, k2))
        if hit is not None:
            return hit
        cur = {k1: 1}
        for gen in self._word(k2):
            nxt = {}
            for k, c in cur.items():
                add_into(nxt, self._times_gen(k, gen), c)
            cur = nxt
        self._mul_cache[(k1, k2)] = cur
        return cur

    def word_product(self, gens):
        """Normal form of a product of generator tokens, folded from the left."""
        cur = {self.unit: 1}
        for gen in gens:
            nxt = {}
            for k, c in cur.items():
                add_into(nxt, self._times_gen(k, gen), c)
            cur = nxt
        return Element(self, cur)

    # -- action on A_{m,n} ----------------------------------------------------

    def act_key(self, key, f):
        """Action of a basis key on a polynomial (the defining representation)."""
        a, I, b, J = key
        terms = dict(f.terms)
        m = self.m
        for j in reversed(J):
            terms = _deriv_terms(terms, m + j, m)
        for i, e in enumerate(b, 1):
            for _ in range(e):
                terms = _deriv_terms(terms, i, m)
        out = {}
        for mono, c in terms.items():
            sign, res = mono_mul((a, I), mono)
            if sign:
                out[res] = out.get(res, 0) + sign * c
        return SuperPoly(self.m, self.n, out)

    def act(self, x, f):
        acc = {}
        for key, c in x.terms.items():
            add_into(acc, self.act_key(key, f).terms, c)
        return SuperPoly(self.m, self.n, acc)

    # -- sigma ---------------------------------------------------------------

    def sigma(self, x):
        """Automorphism ``σ(t_i) = ∂_i``, ``σ(∂_i) = (-1)^{|t_i|+1} t_i``."""
        N = self.m + self.n
        img_t = {i: self.d(i) for i in range(1, N + 1)}
        img_d = {i: self.t(i) * (-1 if i <= self.m else 1) for i in range(1, N + 1)}
        out = Element(self)
        for key, c in x.terms.items():
            prod = self.one()
            for kind, i in self._word(key):
                if kind == "t":
                    prod = prod * img_t[i]
                elif kind == "x":
                    prod = prod * img_t[self.m + i]
                elif kind == "d":
                    prod = prod * img_d[i]
                else:
                    prod = prod * img_d[self.m + i]
            out = out + prod * c
        return out


def _unit_row(m, i):
    return tuple(int(k == i) for k in range(1, m + 1))


def _bump(row, i, step):
    return row[: i - 1] + (row[i - 1] + step,) + row[i:]


def _deriv_terms(terms, d, m):
    out = {}
    for mono, c in terms.items():
        k, res = mono_deriv(mono, d, m)
        if k:
            out[res] = out.get(res, 0) + k * c
    return out


@lru_cache(maxsize=None)
def weyl_algebra(m, n):
    return WeylAlgebra(m, n)


def weyl_mul(a, b):
    if a.alg != b.alg:
        raise SignatureMismatch(f"{a.alg!r} vs {b.alg!r}")
    return a * b
