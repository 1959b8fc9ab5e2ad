"""U(W_{m,n}), the Levi algebra k^ = W_{q,n} ⋉ (k ⊗ A_{q,n}) and its quotient U-bar.

Letters:

* ``("A", alpha, odd)``        the function ``t^alpha xi_odd`` of A_{q,n}
* ``("K", x, alpha, odd)``     ``x ⊗ t^alpha xi_odd`` with ``x = (a, b)`` a matrix unit of k
* ``("W", alpha, odd, d)``     the field ``t^alpha xi_odd ∂_d``

Inside the algebra the directions of W-letters run over ``1..q+n``; the public
constructors take the ambient convention ``{1..q} ∪ {m+1..m+n}``.

In U-bar mode A-letters are absorbed on the left: ``t^0 = 1`` and
``t^a xi_I · t^b xi_J = t^{a+b} xi_I xi_J``, so every normal word is an optional
A-letter followed by sorted K- and W-letters.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from math import comb

from .algebra import Element, add_into
from .core import _apply_term, _bracket_terms, mono_mul, tau
from .errors import AlphabetError, IndexOutOfRange, SpanSolveFailure
from .linalg import solve_in_span
from .pbw import PBWAlgebra, default_degree_cap


@dataclass(frozen=True)
class LeviSpec:
    """Shape of the Levi factor: ``q`` free even directions, ``n`` odd ones and
    the gl-blocks of k inside gl_{m-q}, given by ambient indices in ``q+1..m``."""

    q: int
    n: int
    m: int
    blocks: tuple = field(default=())

    def __post_init__(self):
        blocks = tuple(tuple(sorted(b)) for b in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        seen = set()
        for b in blocks:
            for i in b:
                if not self.q < i <= self.m or i in seen:
                    raise ValueError(f"bad k block {b} for q={self.q}, m={self.m}")
                seen.add(i)
        if self.q < 0 or self.n < 0 or self.q > self.m:
            raise ValueError("need 0 <= q <= m and n >= 0")

    def k_basis(self):
        return [(a, b) for blk in self.blocks for a in blk for b in blk]

    def k_cartan(self):
        return [(a, a) for blk in self.blocks for a in blk]

    def internal_dir(self, d):
        """Ambient direction index to the W_{q,n} unified index."""
        if 1 <= d <= self.q:
            return d
        if self.m < d <= self.m + self.n:
            return d - self.m + self.q
        raise IndexOutOfRange(f"direction {d} not in 1..{self.q} ∪ {self.m + 1}..{self.m + self.n}")

    def ambient_dir(self, d):
        return d if d <= self.q else d - self.q + self.m

    def directions(self):
        return list(range(1, self.q + 1)) + list(range(self.m + 1, self.m + self.n + 1))


def k_bracket(x, y):
    """``[E_ab, E_cd] = δ_bc E_ad - δ_da E_cb`` (k is purely even)."""
    (a, b), (c, d) = x, y
    out = {}
    if b == c:
        out[(a, d)] = out.get((a, d), 0) + 1
    if d == a:
        out[(c, b)] = out.get((c, b), 0) - 1
    return {k: v for k, v in out.items() if v}


def letter_degree(y):
    return sum(y[-3 if y[0] == "W" else -2]) + len(y[-2 if y[0] == "W" else -1])


def _letter_parts(y):
    kind = y[0]
    if kind == "A":
        return y[1], y[2]
    if kind == "K":
        return y[2], y[3]
    return y[1], y[2]


_BLOCK = {"A": 0, "K": 1, "W": 2}


class EnvelopingAlgebra(PBWAlgebra):
    """U(k^ ⋉ A) (``bar=False``) or its quotient U-bar (``bar=True``)."""

    def __init__(self, spec, bar=True, kinds=("A", "K", "W"), max_degree=None):
        self.spec = spec
        self.bar = bar
        self.kinds = tuple(kinds)
        q, n = spec.q, spec.n
        self.q, self.n = q, n
        self._kset = set(spec.k_basis())
        name = f"{'Ubar' if bar else 'U'}(q={q},n={n},m={spec.m},k={spec.blocks},{''.join(self.kinds)})"
        super().__init__(
            name,
            sort_key=self._sort_key,
            parity=self._parity,
            bracket=self._bracket,
            valid=self._valid,
            degree=letter_degree,
            max_degree=default_degree_cap() if max_degree is None else max_degree,
        )

    # -- letter data ----------------------------------------------------------

    def _sort_key(self, y):
        f = _letter_parts(y)
        deg = sum(f[0]) + len(f[1])
        if y[0] == "A":
            return (0, -deg, (), f[0], f[1])
        if y[0] == "K":
            return (1, -deg, y[1], f[0], f[1])
        return (2, -deg, (y[3],), f[0], f[1])

    def _parity(self, y):
        odd = _letter_parts(y)[1]
        return (len(odd) + (y[0] == "W" and y[3] > self.q)) % 2

    def _valid(self, y):
        if not isinstance(y, tuple) or not y or y[0] not in self.kinds:
            return False
        try:
            alpha, odd = _letter_parts(y)
        except (IndexError, TypeError):
            return False
        if len(alpha) != self.q or any((not isinstance(a, int)) or a < 0 for a in alpha):
            return False
        if list(odd) != sorted(set(odd)) or any(not 1 <= j <= self.n for j in odd):
            return False
        if y[0] == "K" and (len(y) != 4 or y[1] not in self._kset):
            return False
        if y[0] == "W" and (len(y) != 4 or not 1 <= y[3] <= self.q + self.n):
            return False
        if y[0] == "A" and len(y) != 3:
            return False
        return True

    def _bracket(self, z, y):
        kz, ky = z[0], y[0]
        q = self.q
        if kz == "W" and ky == "W":
            return {("W",) + k: c for k, c in _bracket_terms(z[1:], y[1:], q).items()}
        if kz == "W" and ky in "AK":
            g = _letter_parts(y)
            c, mono = _apply_term((z[1], z[2]), z[3], g, q)
            if not c:
                return {}
            return {(("A",) + mono) if ky == "A" else ("K", y[1]) + mono: c}
        if kz in "AK" and ky == "W":
            sign = -1 if (self._parity(z) and self._parity(y)) else 1
            return {k: -sign * c for k, c in self._bracket(y, z).items()}
        if kz == "K" and ky == "K":
            sign, mono = mono_mul((z[2], z[3]), (y[2], y[3]))
            if not sign:
                return {}
            return {("K", x) + mono: sign * c for x, c in k_bracket(z[1], y[1]).items()}
        return {}

    def absorb(self, word, y):
        if not self.bar or y[0] != "A":
            return None
        if not any(y[1]) and not y[2]:
            return {word: Fraction(1)}
        if word and word[-1][0] == "A":
            z = word[-1]
            sign, mono = mono_mul((z[1], z[2]), (y[1], y[2]))
            if not sign:
                return {}
            return {word[:-1] + (("A",) + mono,): Fraction(sign)}
        return None

    def format_key(self, word):
        if not word:
            return "1"
        return "·".join(_fmt_letter(y, self.spec) for y in word)

    # -- public constructors ----------------------------------------------------

    def _alpha(self, alpha):
        alpha = (0,) * self.q if alpha is None else tuple(int(a) for a in alpha)
        if len(alpha) != self.q or any(a < 0 for a in alpha):
            raise IndexOutOfRange(f"exponent row {alpha} does not fit q={self.q}")
        return alpha

    def _odd(self, odd):
        odd = tuple(sorted(odd))
        if any(not 1 <= j <= self.n for j in odd) or len(set(odd)) != len(odd):
            raise IndexOutOfRange(f"odd set {odd} not inside 1..{self.n}")
        return odd

    def a_letter(self, alpha=None, odd=()):
        return ("A", self._alpha(alpha), self._odd(odd))

    def k_letter(self, x, alpha=None, odd=()):
        x = tuple(x)
        if x not in self._kset:
            raise IndexOutOfRange(f"{x} is not a basis element of k")
        return ("K", x, self._alpha(alpha), self._odd(odd))

    def w_letter(self, alpha=None, odd=(), d=1):
        return ("W", self._alpha(alpha), self._odd(odd), self.spec.internal_dir(d))

    def a(self, alpha=None, odd=(), coeff=1):
        """``t^alpha xi_odd`` as an element (the unit word when ``alpha = 0``, ``odd = ∅`` in U-bar)."""
        return self.word([self.a_letter(alpha, odd)], coeff)

    def k(self, x, alpha=None, odd=(), coeff=1):
        return self.word([self.k_letter(x, alpha, odd)], coeff)

    def w(self, alpha=None, odd=(), d=1, coeff=1):
        return self.word([self.w_letter(alpha, odd, d)], coeff)

    def partial(self, d):
        return self.w(None, (), d)


def _fmt_letter(y, spec):
    alpha, odd = _letter_parts(y)
    parts = [f"t{i}^{a}" if a > 1 else f"t{i}" for i, a in enumerate(alpha, 1) if a]
    parts += [f"x{j}" for j in odd]
    mono = "".join(parts) or "1"
    if y[0] == "A":
        return f"[{mono}]"
    if y[0] == "K":
        return f"E{y[1][0]}{y[1][1]}⊗{mono}"
    return f"{mono if mono != '1' else ''}∂{spec.ambient_dir(y[3])}"


def enveloping_w(m, n, max_degree=None):
    """U(W_{m,n}) with only W-letters."""
    return EnvelopingAlgebra(LeviSpec(q=m, n=n, m=m), bar=False, kinds=("W",), max_degree=max_degree)


def ubar(q, n, m=None, blocks=(), max_degree=None):
    m = q if m is None else m
    return EnvelopingAlgebra(LeviSpec(q=q, n=n, m=m, blocks=blocks), bar=True, max_degree=max_degree)


def normal_order(e):
    """Re-normalise every word of ``e`` by multiplying its letters in order."""
    alg = e.alg
    acc = {}
    for word, c in e.terms.items():
        for y in word:
            alg.check_letter(y)
        add_into(acc, alg.word(word).terms, c)
    return Element(alg, acc)


def raw_word(alg, letters, coeff=1):
    """A formal, possibly unsorted word; feed it to :func:`normal_order`."""
    for y in letters:
        alg.check_letter(y)
    return Element(alg, {tuple(letters): coeff})


def _unit(q, j):
    if not 1 <= j <= q:
        raise IndexOutOfRange(f"j={j} not in 1..{q}")
    return tuple(int(k == j) for k in range(1, q + 1))


def _shift(alpha, e, k):
    return tuple(a + k * b for a, b in zip(alpha, e))


def build_omega(alg, alpha, beta, I, J, r, j, d, d2):
    """``Σ_i (-1)^i C(r,i) t^{alpha+(r-i)e_j} xi_I ∂ · t^{beta+i e_j} xi_J ∂'`` in normal form."""
    e = _unit(alg.q, j)
    alpha, beta = alg._alpha(alpha), alg._alpha(beta)
    out = Element(alg)
    for i in range(r + 1):
        c = (-1) ** i * comb(r, i)
        out = out + alg.word([alg.w_letter(_shift(alpha, e, r - i), I, d), alg.w_letter(_shift(beta, e, i), J, d2)], c)
    return out


def build_omega_bar(alg, alpha, beta, I, x, r, j):
    """``Σ_i (-1)^i C(r,i) x⊗t^{alpha+(r-i)e_j} xi_I · t^{beta+i e_j} ∂_j``.

    Each word is already sorted (K-block before W-block), so the element is
    assembled directly and no degree cap applies.
    """
    e = _unit(alg.q, j)
    alpha, beta = alg._alpha(alpha), alg._alpha(beta)
    terms = {}
    for i in range(r + 1):
        word = (alg.k_letter(x, _shift(alpha, e, r - i), I), alg.w_letter(_shift(beta, e, i), (), j))
        terms[word] = terms.get(word, 0) + (-1) ** i * comb(r, i)
    return Element(alg, terms)


def _binom_row(alpha, beta):
    out = 1
    for a, b in zip(alpha, beta):
        out *= comb(a, b)
    return out


def _sub_rows(alpha):
    return product(*(range(a + 1) for a in alpha))


def _subsets(I):
    for k in range(len(I) + 1):
        yield from combinations(I, k)


def _complement(I, J):
    return tuple(i for i in I if i not in J)


def build_X(alg, alpha, I, d):
    """``X_{alpha,I,∂} = Σ (-1)^{|β|+|J|+τ(J,I∖J)} C(alpha,β) t^β xi_J · t^{alpha-β} xi_{I∖J} ∂``."""
    alpha, I = alg._alpha(alpha), alg._odd(I)
    out = Element(alg)
    for beta in _sub_rows(alpha):
        for J in _subsets(I):
            rest = _complement(I, J)
            sign = (-1) ** (sum(beta) + len(J) + tau(J, rest))
            rest_alpha = tuple(a - b for a, b in zip(alpha, beta))
            out = out + alg.word([alg.a_letter(beta, J), alg.w_letter(rest_alpha, rest, d)], sign * _binom_row(alpha, beta))
    return out


def build_Y(alg, alpha, I, x):
    """``Y_{alpha,I,x} = Σ (-1)^{|β|+|J|+τ(J,I∖J)} C(alpha,β) t^β xi_J · x⊗t^{alpha-β} xi_{I∖J}``."""
    alpha, I = alg._alpha(alpha), alg._odd(I)
    out = Element(alg)
    for beta in _sub_rows(alpha):
        for J in _subsets(I):
            rest = _complement(I, J)
            sign = (-1) ** (sum(beta) + len(J) + tau(J, rest))
            rest_alpha = tuple(a - b for a, b in zip(alpha, beta))
            out = out + alg.word([alg.a_letter(beta, J), alg.k_letter(x, rest_alpha, rest)], sign * _binom_row(alpha, beta))
    return out


def reconstruct(alg, alpha, I, d=None, x=None):
    """Right-hand side ``Σ (-1)^{τ(J,I∖J)} C(alpha,β) t^β xi_J · X_{alpha-β,I∖J,∂}`` (or with Y)."""
    alpha, I = alg._alpha(alpha), alg._odd(I)
    out = Element(alg)
    for beta in _sub_rows(alpha):
        for J in _subsets(I):
            rest = _complement(I, J)
            rest_alpha = tuple(a - b for a, b in zip(alpha, beta))
            inner = build_X(alg, rest_alpha, rest, d) if x is None else build_Y(alg, rest_alpha, rest, x)
            out = out + alg.a(beta, J) * inner * ((-1) ** tau(J, rest) * _binom_row(alpha, beta))
    return out


@dataclass
class IdentityReport:
    name: str
    params: dict
    verdict: bool
    residual: Element

    @property
    def residual_terms(self):
        return len(self.residual.terms)

    def as_dict(self):
        return {
            "identity": self.name,
            "parameters": self.params,
            "verdict": self.verdict,
            "residual_term_count": self.residual_terms,
        }


def check_identity(lhs, rhs, name="identity", params=None):
    if lhs.alg != rhs.alg:
        raise AlphabetError("identity sides live in different algebras")
    residual = normal_order(lhs - rhs)
    return IdentityReport(name, params or {}, not residual, residual)


def t_generators(alg, max_degree):
    """The X/Y spanning set of T with ``|alpha|+|I| <= max_degree``.

    X needs ``|alpha|+|I| > 0``; Y ranges over every ``(alpha, I, x)``.
    Keys are ``("X", alpha, I, d)`` with ambient ``d`` and ``("Y", alpha, I, x)``.
    """
    out = {}
    q, n = alg.q, alg.n
    for deg in range(0, max_degree + 1):
        for k in range(0, min(n, deg) + 1):
            for I in combinations(range(1, n + 1), k):
                for alpha in _rows_of_sum(deg - k, q):
                    if deg > 0:
                        for d in alg.spec.directions():
                            out[("X", alpha, I, d)] = build_X(alg, alpha, I, d)
                    for x in alg.spec.k_basis():
                        out[("Y", alpha, I, x)] = build_Y(alg, alpha, I, x)
    return out


def _rows_of_sum(total, q):
    if q == 0:
        if total == 0:
            yield ()
        return
    for first in range(total, -1, -1):
        for rest in _rows_of_sum(total - first, q - 1):
            yield (first,) + rest


def t_subalgebra_closure(sample, span=None):
    """Every pairwise super-commutator of ``sample`` lies in the C-span of ``span``.

    ``sample`` and ``span`` map labels to elements. Returns the solved
    coefficient table; raises :class:`SpanSolveFailure` (with residual) otherwise.
    """
    span = sample if span is None else span
    labels = list(span)
    vectors = [span[l].terms for l in labels]
    keys = list(sample)
    table = {}
    for i, a in enumerate(keys):
        for b in keys[i:]:
            br = sample[a].bracket(sample[b])
            try:
                coeffs = solve_in_span(vectors, br.terms)
            except SpanSolveFailure as exc:
                raise SpanSolveFailure(f"[{a}, {b}] is not in the span", exc.residual) from None
            table[(a, b)] = {labels[k]: c for k, c in enumerate(coeffs) if c}
    return table


def lie_image(alg, terms):
    """Map a combination of W/K letters (of m∇ ⋉ (k⊗A)) to the matching X/Y combination."""
    out = Element(alg)
    for y, c in terms.items():
        if y[0] == "W":
            out = out + build_X(alg, y[1], y[2], alg.spec.ambient_dir(y[3])) * c
        elif y[0] == "K":
            out = out + build_Y(alg, y[2], y[3], y[1]) * c
        else:
            raise AlphabetError(f"{y!r} is not a letter of m∇ ⋉ (k⊗A)")
    return out


def check_t_homomorphism(alg, max_alpha):
    """``[X_u, X_v] = X_{[u,v]}`` for generators ``u, v`` of m∇ ⋉ (k⊗A) with ``|alpha| <= max_alpha``.

    Returns a list of failing pairs (empty on success).
    """
    letters = []
    for deg in range(0, max_alpha + 1):
        for alpha in _rows_of_sum(deg, alg.q):
            for k in range(alg.n + 1):
                for I in combinations(range(1, alg.n + 1), k):
                    if deg + k > 0:
                        letters += [alg.w_letter(alpha, I, d) for d in alg.spec.directions()]
                    letters += [alg.k_letter(x, alpha, I) for x in alg.spec.k_basis()]
    failures = []
    for i, u in enumerate(letters):
        for v in letters[i:]:
            lhs = lie_image(alg, {u: 1}).bracket(lie_image(alg, {v: 1}))
            rhs = lie_image(alg, alg.bracket_letters(u, v))
            if lhs != rhs:
                failures.append((u, v))
    return failures
