"""Simple weight modules over the Weyl superalgebra K_{m,n}, described symbolically.

Every even coordinate carries one factor

* ``Shift(lam)``   ``t^lam C[t^{±1}]`` with ``lam`` not an integer (exponents ``lam + Z``)
* ``Poly``         ``C[t]`` (exponents ``>= 0``)
* ``Quot``         ``C[t^{±1}]/C[t]`` (exponents ``<= -1``)

and the odd coordinates always give the full exterior algebra. A basis vector is
``(exps, odd)``. All three factor types act by one rule: ``t`` raises the
exponent and the result is zero once the exponent leaves the allowed set, ``∂``
multiplies by the exponent and lowers it.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product

from .core import mono_mul, tau
from .errors import SignatureMismatch, UnknownTag
from .geometry import ShiftedCone, SupportSet, unit


@dataclass(frozen=True)
class Factor:
    kind: str  # "L", "P" or "Q"
    shift: Fraction = Fraction(0)

    def __post_init__(self):
        if self.kind not in ("L", "P", "Q"):
            raise ValueError(f"unknown factor kind {self.kind!r}")
        object.__setattr__(self, "shift", Fraction(self.shift))
        if self.kind == "L" and self.shift.denominator == 1:
            raise ValueError("a shifted Laurent factor needs a non-integral shift")
        if self.kind != "L" and self.shift:
            raise ValueError("only shifted Laurent factors carry a shift")

    def allowed(self, e):
        if self.kind == "L":
            return (e - self.shift).denominator == 1
        if Fraction(e).denominator != 1:
            return False
        return e >= 0 if self.kind == "P" else e <= -1

    def origin(self):
        """Reference exponent: the shift for L, 0 for P and -1 for Q."""
        return {"L": self.shift, "P": Fraction(0), "Q": Fraction(-1)}[self.kind]

    def exponents(self, lo, hi):
        """Allowed exponents ``origin + k`` for offsets ``lo <= k <= hi``."""
        return [self.origin() + k for k in range(lo, hi + 1) if self.allowed(self.origin() + k)]

    def label(self):
        return f"L{self.shift}" if self.kind == "L" else self.kind

    def sigma(self):
        if self.kind == "L":
            return Factor("L", -1 - self.shift)
        return Factor("Q" if self.kind == "P" else "P")

    def cone_piece(self):
        return {"L": (self.shift, "Z"), "P": (0, "+"), "Q": (-1, "-")}[self.kind]


POLY = Factor("P")
QUOT = Factor("Q")


def shift(lam):
    return Factor("L", Fraction(lam))


@dataclass(frozen=True)
class ModuleDescriptor:
    m: int
    n: int
    factors: tuple
    parity: int = 0

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        object.__setattr__(self, "parity", int(self.parity) % 2)
        if len(self.factors) != self.m:
            raise SignatureMismatch(f"{len(self.factors)} factors for m={self.m}")

    # -- constructors ---------------------------------------------------------

    @classmethod
    def A(cls, m, n, parity=0):
        return cls(m, n, (POLY,) * m, parity)

    @classmethod
    def A_sigma(cls, m, n):
        """``A^σ``: all factors ``Quot``, parity shifted by ``n`` (top odd form is even)."""
        return sigma_twist(cls.A(m, n))

    def flip(self):
        return ModuleDescriptor(self.m, self.n, self.factors, 1 - self.parity)

    # -- predicates ------------------------------------------------------------

    def is_A(self):
        """``P ≅ A`` or ``Π(A)``."""
        return all(f.kind == "P" for f in self.factors)

    def is_A_sigma(self):
        return all(f.kind == "Q" for f in self.factors)

    def sum_partials_is_everything(self):
        """``P = Σ_s ∂_s P``.

        The cokernel of ``Σ ∂_s`` is the tensor product of the per-factor cokernels;
        ``∂`` is onto for ``Poly`` and ``Shift`` factors, misses ``t^{-1}`` on
        ``Quot`` and misses ``ξ`` on each odd factor.
        """
        return any(f.kind in ("L", "P") for f in self.factors)

    # -- basis and action -----------------------------------------------------------

    def vector_parity(self, label):
        return (len(label[1]) + self.parity) % 2

    def weight(self, label):
        return tuple(Fraction(e) for e in label[0])

    def origin(self):
        return tuple(f.origin() for f in self.factors)

    def valid(self, label):
        exps, odd = label
        return (
            len(exps) == self.m
            and all(f.allowed(e) for f, e in zip(self.factors, exps))
            and list(odd) == sorted(set(odd))
            and all(1 <= j <= self.n for j in odd)
        )

    def labels_of_weight(self, mu):
        mu = tuple(Fraction(c) for c in mu)
        if len(mu) != self.m or not all(f.allowed(e) for f, e in zip(self.factors, mu)):
            return []
        return [(mu, odd) for k in range(self.n + 1) for odd in combinations(range(1, self.n + 1), k)]

    def basis_window(self, lo, hi):
        """Basis vectors with exponents ``origin + k``, ``lo <= k <= hi``."""
        rows = [f.exponents(lo, hi) for f in self.factors]
        out = []
        for exps in product(*rows):
            out.extend(self.labels_of_weight(exps))
        return out

    def act_key(self, key, label):
        """Action of a Weyl basis key ``t^a xi_I ∂^b ∂_J`` on a basis vector."""
        a, I, b, J = key
        exps, odd = label
        coeff = Fraction(1)
        # odd derivatives, rightmost first
        for j in reversed(J):
            if j not in odd:
                return {}
            pos = odd.index(j)
            coeff *= (-1) ** pos
            odd = odd[:pos] + odd[pos + 1:]
        exps = list(exps)
        for i, e in enumerate(b):
            for _ in range(e):
                c = exps[i]
                if not c:
                    return {}
                coeff *= c
                exps[i] = c - 1
                if not self.factors[i].allowed(exps[i]):
                    return {}
        for i, e in enumerate(a):
            exps[i] = exps[i] + e
            if not self.factors[i].allowed(exps[i]):
                return {}
        if I:
            if set(I) & set(odd):
                return {}
            coeff *= (-1) ** tau(I, odd)
            odd = tuple(sorted(I + odd))
        return {(tuple(Fraction(e) for e in exps), odd): coeff}

    def act(self, element, vec):
        """Action of a Weyl algebra element on a sparse vector of basis labels."""
        if (element.alg.m, element.alg.n) != (self.m, self.n):
            raise SignatureMismatch("Weyl algebra and descriptor signatures differ")
        out = {}
        for key, c in element.terms.items():
            for lab, v in vec.items():
                for lab2, w in self.act_key(key, lab).items():
                    out[lab2] = out.get(lab2, 0) + c * v * w
        return {k: v for k, v in out.items() if v}

    # -- support ---------------------------------------------------------------------

    def support(self):
        """Support over the even Cartan ``d_1..d_m``."""
        base, free, plus = [], [], []
        for i, f in enumerate(self.factors, 1):
            b, kind = f.cone_piece()
            base.append(b)
            if kind == "Z":
                free.append(unit(self.m, i))
            elif kind == "+":
                plus.append(unit(self.m, i))
            else:
                plus.append(unit(self.m, i, -1))
        return SupportSet((ShiftedCone(tuple(base), tuple(free), tuple(plus)),))

    # -- text ------------------------------------------------------------------------

    def to_string(self):
        body = ",".join(f.label() for f in self.factors)
        if self.is_A() and self.m:
            body = "A"
        elif self.is_A_sigma() and self.m and self.parity == self.n % 2:
            return "Asigma"
        if not self.m:
            body = "A"
        return ("Pi:" if self.parity else "") + body

    def __str__(self):
        return self.to_string()


def sigma_twist(d):
    """Transport along ``σ(t_i) = ∂_i, σ(∂_i) = (-1)^{|t_i|+1} t_i``.

    ``Poly ↔ Quot``, ``Shift(λ) → Shift(-1-λ)``; the odd part is re-generated
    from its top form, which shifts the parity by ``n``.
    """
    return ModuleDescriptor(d.m, d.n, tuple(f.sigma() for f in d.factors), d.parity + d.n)


def parse_descriptor(text, m, n):
    """``A``, ``PiA``, ``Asigma``, ``PiAsigma`` or comma-separated factors ``L1/2,P,Q``;
    an optional ``Pi:`` prefix flips parity."""
    s = text.strip()
    parity = 0
    if s.startswith("Pi:"):
        parity, s = 1, s[3:]
    if s in ("A", "PiA"):
        d = ModuleDescriptor.A(m, n)
        if s == "PiA":
            d = d.flip()
    elif s in ("Asigma", "PiAsigma"):
        d = ModuleDescriptor.A_sigma(m, n)
        if s == "PiAsigma":
            d = d.flip()
    else:
        parts = [p.strip() for p in s.split(",") if p.strip()]
        factors = []
        for p in parts:
            if p == "P":
                factors.append(POLY)
            elif p == "Q":
                factors.append(QUOT)
            elif p.startswith("L"):
                try:
                    factors.append(shift(Fraction(p[1:])))
                except (ValueError, ZeroDivisionError) as exc:
                    raise UnknownTag(f"bad Laurent factor {p!r}") from exc
            else:
                raise UnknownTag(f"unknown factor {p!r} in descriptor {text!r}")
        d = ModuleDescriptor(m, n, tuple(factors))
    return d.flip() if parity else d


def sum_partials_window(d, radius=3):
    """Oracle for :meth:`ModuleDescriptor.sum_partials_is_everything`.

    Every basis vector with exponent offsets in ``[-radius, radius]`` is tested
    for membership in ``Σ_s ∂_s P``, weight by weight, with exact ranks.
    Returns True iff all of them are hit.
    """
    from .linalg import in_span
    from .weyl import weyl_algebra

    K = weyl_algebra(d.m, d.n)
    parts = [K.d(s) for s in range(1, d.m + d.n + 1)]
    for lab in d.basis_window(-radius, radius):
        mu = d.weight(lab)
        sources = []
        for s in range(1, d.m + 1):
            sources += d.labels_of_weight(tuple(c + (k == s - 1) for k, c in enumerate(mu)))
        sources += d.labels_of_weight(mu)
        images = []
        for src in sources:
            for p in parts:
                v = d.act(p, {src: Fraction(1)})
                if v:
                    images.append(v)
        if not in_span(images, {lab: Fraction(1)}):
            return False
    return True
