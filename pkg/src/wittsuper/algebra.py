"""Shared arithmetic for associative superalgebras with a keyed basis.

An algebra object only has to provide ``mul_keys(k1, k2) -> dict`` for basis
keys in normal form, ``parity(k)`` and a ``unit`` key. :class:`Element` then
supplies linear combinations, products and super-commutators. The Weyl
superalgebra, the enveloping algebras and their super tensor products all
plug in here.
"""

from fractions import Fraction


def add_into(acc, terms, scale=1):
    """``acc += scale * terms`` on coefficient dicts, pruning zeros."""
    for k, c in terms.items():
        v = acc.get(k, 0) + scale * c
        if v:
            acc[k] = v
        else:
            acc.pop(k, None)
    return acc


class Element:
    __slots__ = ("alg", "terms")

    def __init__(self, alg, terms=None):
        self.alg = alg
        clean = {}
        if terms:
            for k, c in terms.items():
                if c:
                    clean[k] = Fraction(c)
        self.terms = clean

    @classmethod
    def basis(cls, alg, key, coeff=1):
        return cls(alg, {key: coeff})

    @classmethod
    def one(cls, alg):
        return cls(alg, {alg.unit: 1})

    def _check(self, other):
        if other.alg != self.alg:
            raise TypeError(f"cannot combine elements of {self.alg!r} and {other.alg!r}")

    def __add__(self, other):
        if not isinstance(other, Element):
            other = Element(self.alg, {self.alg.unit: other}) if other else Element(self.alg)
        self._check(other)
        return Element(self.alg, add_into(dict(self.terms), other.terms))

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, Element):
            other = Element(self.alg, {self.alg.unit: other}) if other else Element(self.alg)
        self._check(other)
        return Element(self.alg, add_into(dict(self.terms), other.terms, -1))

    def __neg__(self):
        return Element(self.alg, {k: -c for k, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Element):
            return Element(self.alg, {k: c * other for k, c in self.terms.items()})
        self._check(other)
        acc = {}
        mul = self.alg.mul_keys
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                add_into(acc, mul(k1, k2), c1 * c2)
        return Element(self.alg, acc)

    def __rmul__(self, scalar):
        return Element(self.alg, {k: scalar * c for k, c in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.alg == other.alg and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.alg, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        fmt = getattr(self.alg, "format_key", repr)
        parts = [f"{c}*{fmt(k)}" for k, c in sorted(self.terms.items(), key=lambda kv: repr(kv[0]))]
        return " + ".join(parts)

    def homogeneous_parts(self):
        parts = ({}, {})
        for k, c in self.terms.items():
            parts[self.alg.parity(k)][k] = c
        return [Element(self.alg, p) for p in parts]

    def parity(self):
        """Parity of a homogeneous element (``None`` for zero, ValueError if mixed)."""
        ps = {self.alg.parity(k) for k in self.terms}
        if not ps:
            return None
        if len(ps) > 1:
            raise ValueError("element is not Z2-homogeneous")
        return ps.pop()

    def bracket(self, other):
        """Super-commutator, extended bilinearly over homogeneous components."""
        self._check(other)
        acc = {}
        mul, par = self.alg.mul_keys, self.alg.parity
        for k1, c1 in self.terms.items():
            p1 = par(k1)
            for k2, c2 in other.terms.items():
                c = c1 * c2
                add_into(acc, mul(k1, k2), c)
                sign = -1 if (p1 and par(k2)) else 1
                add_into(acc, mul(k2, k1), -sign * c)
        return Element(self.alg, acc)


class TensorAlgebra:
    """Super tensor product: ``(a⊗b)(c⊗d) = (-1)^{|b||c|} ac⊗bd``."""

    def __init__(self, left, right):
        self.left = left
        self.right = right
        self.unit = (left.unit, right.unit)
        self._cache = {}

    def __eq__(self, other):
        return isinstance(other, TensorAlgebra) and (self.left, self.right) == (other.left, other.right)

    def __hash__(self):
        return hash(("tensor", self.left, self.right))

    def __repr__(self):
        return f"({self.left!r} ⊗ {self.right!r})"

    def parity(self, key):
        return (self.left.parity(key[0]) + self.right.parity(key[1])) % 2

    def mul_keys(self, k1, k2):
        hit = self._cache.get((k1, k2))
        if hit is not None:
            return hit
        a1, b1 = k1
        a2, b2 = k2
        sign = -1 if (self.right.parity(b1) and self.left.parity(a2)) else 1
        left = self.left.mul_keys(a1, a2)
        right = self.right.mul_keys(b1, b2)
        out = {}
        for ka, ca in left.items():
            for kb, cb in right.items():
                out[(ka, kb)] = sign * ca * cb
        self._cache[(k1, k2)] = out
        return out

    def format_key(self, key):
        fl = getattr(self.left, "format_key", repr)
        fr = getattr(self.right, "format_key", repr)
        return f"{fl(key[0])}⊗{fr(key[1])}"


def tensor(a, b):
    """Pure tensor of two elements in ``TensorAlgebra(a.alg, b.alg)``."""
    alg = TensorAlgebra(a.alg, b.alg)
    return Element(alg, {(ka, kb): ca * cb for ka, ca in a.terms.items() for kb, cb in b.terms.items()})


def embed_left(a, right_alg):
    return tensor(a, Element.one(right_alg))


def embed_right(left_alg, b):
    return tensor(Element.one(left_alg), b)
