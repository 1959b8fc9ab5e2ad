"""Exact arithmetic in A_{m,n}, W_{m,n}, the extension W~ = W ⋉ A, and gl_{m,n}.

Indices run over the unified range ``1..m+n``: ``i <= m`` is the even variable
``t_i`` and ``i = m + j`` is the odd variable ``xi_j``. A monomial is the pair
``(alpha, odd)`` where ``alpha`` is a tuple of ``m`` integers and ``odd`` is a
strictly increasing tuple drawn from ``1..n``; ``xi_odd`` is the ordered
product of its letters. Every sign is routed through :func:`tau`.
"""

from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from .algebra import add_into
from .errors import OverlappingSets, SignatureMismatch, SizeMismatch


def tau(I, J):
    """Inversions of the concatenated sequence (sorted I, sorted J)."""
    I, J = set(I), set(J)
    if I & J:
        raise OverlappingSets(f"index sets overlap: {sorted(I & J)}")
    return sum(1 for i in I for j in J if j < i)


@lru_cache(maxsize=None)
def odd_mul(I, J):
    """``xi_I * xi_J`` as ``(sign, I ∪ J)``; sign 0 when the sets meet."""
    if set(I) & set(J):
        return 0, ()
    sign = -1 if tau(I, J) % 2 else 1
    return sign, tuple(sorted(I + J))


@lru_cache(maxsize=None)
def mono_mul(a, b):
    """Product of monomials ``(alpha, odd)``; returns ``(sign, monomial)``."""
    sign, odd = odd_mul(a[1], b[1])
    if not sign:
        return 0, None
    return sign, (tuple(x + y for x, y in zip(a[0], b[0])), odd)


@lru_cache(maxsize=None)
def mono_deriv(mono, d, m):
    """``∂_d`` applied to a monomial; returns ``(coeff, monomial)`` or ``(0, None)``."""
    alpha, odd = mono
    if d <= m:
        k = alpha[d - 1]
        if k == 0:
            return 0, None
        return k, (alpha[: d - 1] + (k - 1,) + alpha[d:], odd)
    j = d - m
    if j not in odd:
        return 0, None
    pos = odd.index(j)
    return (-1 if pos % 2 else 1), (alpha, odd[:pos] + odd[pos + 1 :])


def mono_degree(mono):
    return sum(mono[0]) + len(mono[1])


def mono_parity(mono):
    return len(mono[1]) % 2


def monomials(m, n, max_degree, min_degree=0):
    """All polynomial monomials of A_{m,n} with degree in ``[min_degree, max_degree]``."""
    out = []
    for k in range(0, n + 1):
        for odd in combinations(range(1, n + 1), k):
            for total in range(max(min_degree - k, 0), max_degree - k + 1):
                for alpha in _compositions(total, m):
                    out.append((alpha, odd))
    out.sort(key=lambda mo: (mono_degree(mo), mo[0], mo[1]))
    return out


def _compositions(total, parts):
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def format_mono(mono, m):
    alpha, odd = mono
    parts = []
    for i, a in enumerate(alpha, 1):
        if a == 1:
            parts.append(f"t{i}")
        elif a:
            parts.append(f"t{i}^{a}")
    parts += [f"x{j}" for j in odd]
    return "*".join(parts) if parts else "1"


class SuperPoly:
    """Element of A_{m,n} (or of the Laurent algebra when ``laurent=True``)."""

    __slots__ = ("m", "n", "terms", "laurent")

    def __init__(self, m, n, terms=None, laurent=False):
        self.m, self.n, self.laurent = m, n, laurent
        clean = {}
        for mono, c in (terms or {}).items():
            alpha, odd = mono
            alpha, odd = tuple(int(a) for a in alpha), tuple(odd)
            if len(alpha) != m or any(not 1 <= j <= n for j in odd) or list(odd) != sorted(set(odd)):
                raise SignatureMismatch(f"monomial {mono!r} does not fit A_({m},{n})")
            if not laurent and any(a < 0 for a in alpha):
                raise ValueError(f"negative exponent in polynomial context: {mono!r}")
            if c:
                clean[(alpha, odd)] = Fraction(c)
        self.terms = clean

    @classmethod
    def monomial(cls, m, n, alpha=None, odd=(), coeff=1, laurent=False):
        alpha = tuple(alpha) if alpha is not None else (0,) * m
        return cls(m, n, {(alpha, tuple(sorted(odd))): coeff}, laurent)

    @classmethod
    def t(cls, m, n, i):
        return cls.monomial(m, n, tuple(int(k == i) for k in range(1, m + 1)))

    @classmethod
    def xi(cls, m, n, j):
        return cls.monomial(m, n, odd=(j,))

    @classmethod
    def one(cls, m, n):
        return cls.monomial(m, n)

    def _check(self, other):
        if (self.m, self.n) != (other.m, other.n):
            raise SignatureMismatch(f"A_({self.m},{self.n}) vs A_({other.m},{other.n})")

    def __add__(self, other):
        self._check(other)
        return SuperPoly(self.m, self.n, add_into(dict(self.terms), other.terms), self.laurent or other.laurent)

    def __sub__(self, other):
        self._check(other)
        return SuperPoly(self.m, self.n, add_into(dict(self.terms), other.terms, -1), self.laurent or other.laurent)

    def __neg__(self):
        return SuperPoly(self.m, self.n, {k: -c for k, c in self.terms.items()}, self.laurent)

    def scale(self, c):
        return SuperPoly(self.m, self.n, {k: c * v for k, v in self.terms.items()}, self.laurent)

    def __mul__(self, other):
        if not isinstance(other, SuperPoly):
            return self.scale(other)
        return mul(self, other)

    __rmul__ = scale

    def __eq__(self, other):
        if isinstance(other, SuperPoly):
            return (self.m, self.n) == (other.m, other.n) and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.m, self.n, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{format_mono(k, self.m)}" for k, c in sorted(self.terms.items()))

    def parity(self):
        ps = {mono_parity(k) for k in self.terms}
        if len(ps) > 1:
            raise ValueError("polynomial is not Z2-homogeneous")
        return ps.pop() if ps else 0

    def deriv(self, d):
        if not 1 <= d <= self.m + self.n:
            raise SignatureMismatch(f"direction {d} outside 1..{self.m + self.n}")
        out = {}
        for mono, c in self.terms.items():
            k, res = mono_deriv(mono, d, self.m)
            if k:
                out[res] = out.get(res, 0) + k * c
        return SuperPoly(self.m, self.n, out, self.laurent)


def mul(f, g):
    """Product in A_{m,n}: ``xi_I xi_J = (-1)^tau(I,J) xi_{I∪J}``, zero on overlap."""
    f._check(g)
    out = {}
    for a, c in f.terms.items():
        for b, e in g.terms.items():
            sign, mono = mono_mul(a, b)
            if sign:
                out[mono] = out.get(mono, 0) + sign * c * e
    return SuperPoly(f.m, f.n, out, f.laurent or g.laurent)


# -- vector fields -------------------------------------------------------------

def field_term_parity(key, m):
    _, odd, d = key
    return (len(odd) + (d > m)) % 2


@lru_cache(maxsize=None)
def _apply_term(mono, d, target, m):
    """``(t^alpha xi_I ∂_d)(target monomial)`` as ``(coeff, monomial)``."""
    k, res = mono_deriv(target, d, m)
    if not k:
        return 0, None
    sign, out = mono_mul(mono, res)
    if not sign:
        return 0, None
    return sign * k, out


@lru_cache(maxsize=None)
def _bracket_terms(x, y, m):
    """Super-bracket of two basis fields ``(alpha, odd, dir)``; dict of keys."""
    fx, dx = (x[0], x[1]), x[2]
    fy, dy = (y[0], y[1]), y[2]
    out = {}
    c, mono = _apply_term(fx, dx, fy, m)
    if c:
        key = mono + (dy,)
        out[key] = out.get(key, 0) + c
    c, mono = _apply_term(fy, dy, fx, m)
    if c:
        sign = -1 if (field_term_parity(x, m) and field_term_parity(y, m)) else 1
        key = mono + (dx,)
        out[key] = out.get(key, 0) - sign * c
    return {k: v for k, v in out.items() if v}


class VectorField:
    """Finite sum ``Σ c t^alpha xi_I ∂_d`` with keys ``(alpha, odd, d)``."""

    __slots__ = ("m", "n", "terms")

    def __init__(self, m, n, terms=None):
        self.m, self.n = m, n
        clean = {}
        for key, c in (terms or {}).items():
            alpha, odd, d = key
            alpha, odd = tuple(int(a) for a in alpha), tuple(odd)
            if len(alpha) != m or not 1 <= d <= m + n or any(not 1 <= j <= n for j in odd):
                raise SignatureMismatch(f"field term {key!r} does not fit W_({m},{n})")
            if any(a < 0 for a in alpha) or list(odd) != sorted(set(odd)):
                raise ValueError(f"bad field term {key!r}")
            if c:
                clean[(alpha, odd, d)] = Fraction(c)
        self.terms = clean

    @classmethod
    def basis(cls, m, n, alpha=None, odd=(), d=1, coeff=1):
        alpha = tuple(alpha) if alpha is not None else (0,) * m
        return cls(m, n, {(alpha, tuple(sorted(odd)), d): coeff})

    @classmethod
    def from_poly(cls, f, d):
        return cls(f.m, f.n, {mono + (d,): c for mono, c in f.terms.items()})

    @classmethod
    def partial(cls, m, n, d):
        return cls.basis(m, n, d=d)

    @classmethod
    def euler(cls, m, n, i):
        """``d_i = t_i ∂_i``."""
        if i <= m:
            return cls.basis(m, n, tuple(int(k == i) for k in range(1, m + 1)), (), i)
        return cls.basis(m, n, None, (i - m,), i)

    def _check(self, other):
        if (self.m, self.n) != (other.m, other.n):
            raise SignatureMismatch(f"W_({self.m},{self.n}) vs W_({other.m},{other.n})")

    def __add__(self, other):
        self._check(other)
        return VectorField(self.m, self.n, add_into(dict(self.terms), other.terms))

    def __sub__(self, other):
        self._check(other)
        return VectorField(self.m, self.n, add_into(dict(self.terms), other.terms, -1))

    def __neg__(self):
        return VectorField(self.m, self.n, {k: -c for k, c in self.terms.items()})

    def scale(self, c):
        return VectorField(self.m, self.n, {k: c * v for k, v in self.terms.items()})

    __rmul__ = scale

    def __mul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        if isinstance(other, VectorField):
            return (self.m, self.n) == (other.m, other.n) and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.m, self.n, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(
            f"{c}*{format_mono(k[:2], self.m)}∂{k[2]}" for k, c in sorted(self.terms.items())
        )

    def parity(self):
        ps = {field_term_parity(k, self.m) for k in self.terms}
        if len(ps) > 1:
            raise ValueError("field is not Z2-homogeneous")
        return ps.pop() if ps else 0

    def degree(self):
        return max((sum(k[0]) + len(k[1]) for k in self.terms), default=0)

    def hweight(self):
        """Weight under ``h = span{d_1..d_m}`` of a single-term field."""
        (alpha, _, d), = self.terms
        return tuple(a - (i == d) for i, a in enumerate(alpha, 1))


def apply_field(x, f):
    """Super-Leibniz action ``(g ∂_i)(f) = g · ∂_i(f)``."""
    if (x.m, x.n) != (f.m, f.n):
        raise SignatureMismatch(f"W_({x.m},{x.n}) cannot act on A_({f.m},{f.n})")
    out = {}
    m = x.m
    for key, c in x.terms.items():
        mono, d = key[:2], key[2]
        for target, e in f.terms.items():
            k, res = _apply_term(mono, d, target, m)
            if k:
                out[res] = out.get(res, 0) + k * c * e
    return SuperPoly(f.m, f.n, out, f.laurent)


def bracket_w(x, y):
    """``[f∂_i, g∂_j] = f∂_i(g)∂_j - (-1)^{|f∂_i||g∂_j|} g∂_j(f)∂_i``, bilinearly."""
    x._check(y)
    acc = {}
    for kx, cx in x.terms.items():
        for ky, cy in y.terms.items():
            add_into(acc, _bracket_terms(kx, ky, x.m), cx * cy)
    return VectorField(x.m, x.n, acc)


def basis_fields(m, n, max_degree, min_degree=0):
    """Standard basis ``t^alpha xi_I ∂_i`` with polynomial degree in range."""
    return [
        VectorField.basis(m, n, mono[0], mono[1], d)
        for mono in monomials(m, n, max_degree, min_degree)
        for d in range(1, m + n + 1)
    ]


# -- W~ = W ⋉ A ----------------------------------------------------------------

class TildeElement:
    """Element ``x + a`` of the extended Witt superalgebra W~_{m,n}."""

    __slots__ = ("field", "func")

    def __init__(self, field=None, func=None, m=None, n=None):
        if field is None and func is None:
            raise ValueError("need a field or a function part")
        if field is None:
            field = VectorField(func.m, func.n)
        if func is None:
            func = SuperPoly(field.m, field.n)
        if (field.m, field.n) != (func.m, func.n):
            raise SignatureMismatch("W and A parts have different signatures")
        self.field, self.func = field, func

    def __eq__(self, other):
        return isinstance(other, TildeElement) and self.field == other.field and self.func == other.func

    def __hash__(self):
        return hash((self.field, self.func))

    def __repr__(self):
        return f"TildeElement({self.field!r} | {self.func!r})"


def bracket_tilde(x, y):
    """Bracket on W ⊕ A: ``[a,a'] = 0``, ``[x,a] = x(a) = -(-1)^{|x||a|}[a,x]``."""
    if (x.field.m, x.field.n) != (y.field.m, y.field.n):
        raise SignatureMismatch("W~ signatures differ")
    field = bracket_w(x.field, y.field)
    func = apply_field(x.field, y.func)
    # [a, y] = -(-1)^{|y||a|} y(a), summed over homogeneous pieces
    for key, c in y.field.terms.items():
        part = VectorField(x.field.m, x.field.n, {key: c})
        py = field_term_parity(key, x.field.m)
        for mono, e in x.func.terms.items():
            sign = -1 if (py and mono_parity(mono)) else 1
            a = SuperPoly(x.func.m, x.func.n, {mono: e})
            func = func - apply_field(part, a).scale(sign)
    return TildeElement(field, func)


# -- gl_{m,n} -------------------------------------------------------------------

def gl_parity(i, j, m):
    return ((i > m) + (j > m)) % 2


class GlElement:
    """Matrix ``Σ c E_{i,j}`` in gl_{m,n} with keys ``(i, j)``."""

    __slots__ = ("m", "n", "entries")

    def __init__(self, m, n, entries=None):
        self.m, self.n = m, n
        N = m + n
        clean = {}
        for (i, j), c in (entries or {}).items():
            if not (1 <= i <= N and 1 <= j <= N):
                raise SizeMismatch(f"E_({i},{j}) outside gl_({m},{n})")
            if c:
                clean[(i, j)] = Fraction(c)
        self.entries = clean

    @classmethod
    def unit(cls, m, n, i, j, coeff=1):
        return cls(m, n, {(i, j): coeff})

    def _check(self, other):
        if (self.m, self.n) != (other.m, other.n):
            raise SizeMismatch(f"gl_({self.m},{self.n}) vs gl_({other.m},{other.n})")

    def __add__(self, other):
        self._check(other)
        return GlElement(self.m, self.n, add_into(dict(self.entries), other.entries))

    def __sub__(self, other):
        self._check(other)
        return GlElement(self.m, self.n, add_into(dict(self.entries), other.entries, -1))

    def scale(self, c):
        return GlElement(self.m, self.n, {k: c * v for k, v in self.entries.items()})

    __rmul__ = scale

    def __eq__(self, other):
        if isinstance(other, GlElement):
            return (self.m, self.n) == (other.m, other.n) and self.entries == other.entries
        if other == 0:
            return not self.entries
        return NotImplemented

    def __hash__(self):
        return hash((self.m, self.n, frozenset(self.entries.items())))

    def __repr__(self):
        if not self.entries:
            return "0"
        return " + ".join(f"{c}*E{i},{j}" for (i, j), c in sorted(self.entries.items()))

    def parity(self):
        ps = {gl_parity(i, j, self.m) for i, j in self.entries}
        if len(ps) > 1:
            raise ValueError("matrix is not Z2-homogeneous")
        return ps.pop() if ps else 0

    def zdegree(self):
        """Degree in the Z-gradation gl^{-1} ⊕ gl^0 ⊕ gl^1 of a homogeneous element."""
        ds = {int(j > self.m) - int(i > self.m) for i, j in self.entries}
        if len(ds) > 1:
            raise ValueError("matrix is not Z-homogeneous")
        return ds.pop() if ds else 0


@lru_cache(maxsize=None)
def gl_bracket_units(a, b, m):
    """``[E_a, E_b]`` for index pairs, as a dict of index pairs."""
    (i, j), (k, l) = a, b
    out = {}
    if j == k:
        out[(i, l)] = out.get((i, l), 0) + 1
    if l == i:
        sign = -1 if (gl_parity(i, j, m) and gl_parity(k, l, m)) else 1
        out[(k, j)] = out.get((k, j), 0) - sign
    return {key: v for key, v in out.items() if v}


def bracket_gl(x, y):
    x._check(y)
    acc = {}
    for a, c in x.entries.items():
        for b, e in y.entries.items():
            add_into(acc, gl_bracket_units(a, b, x.m), c * e)
    return GlElement(x.m, x.n, acc)


def supertrace(x):
    return sum((c if i <= x.m else -c) for (i, j), c in x.entries.items() if i == j) + Fraction(0)


str_ = supertrace
