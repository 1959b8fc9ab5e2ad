"""PBW normal ordering in universal enveloping superalgebras.

A :class:`PBWAlgebra` is described by its letters: a total order (``sort_key``),
a parity and a bracket returning a dict of letters. Basis keys are tuples of
letters in weakly increasing order with odd letters never repeated. Products
are normalised by inserting one letter at a time,

    u·z·y = (-1)^{|z||y|} (u·y)·z + u·[z,y]        (z > y)
    u·z·z = ½ u·[z,z]                              (z odd)

which terminates because every swap either shortens the word or lowers its
inversion count.
"""

import os
from fractions import Fraction

from .algebra import Element, add_into
from .core import gl_bracket_units, gl_parity
from .errors import AlphabetError, DegreeCapExceeded

HALF = Fraction(1, 2)


def default_degree_cap():
    return int(os.environ.get("WITTSUPER_MAX_DEGREE", "6"))


class PBWAlgebra:
    """Enveloping algebra of a Lie superalgebra given by letter data.

    ``degree(letter)`` is optional; when given, any intermediate word whose
    total degree exceeds ``max_degree`` raises :class:`DegreeCapExceeded`.
    """

    def __init__(self, name, sort_key, parity, bracket, valid=None, degree=None, max_degree=None):
        self.name = name
        self.sort_key = sort_key
        self.letter_parity = parity
        self.letter_bracket = bracket
        self.valid = valid
        self.degree = degree
        self.max_degree = default_degree_cap() if max_degree is None else max_degree
        self.unit = ()
        self._cache = {}
        self._bracket_cache = {}

    def __repr__(self):
        return f"U({self.name})"

    def __eq__(self, other):
        return isinstance(other, PBWAlgebra) and self.name == other.name

    def __hash__(self):
        return hash(("pbw", self.name))

    def parity(self, word):
        return sum(self.letter_parity(y) for y in word) % 2

    def format_key(self, word):
        return "·".join(map(str, word)) if word else "1"

    def check_letter(self, y):
        if self.valid is not None and not self.valid(y):
            raise AlphabetError(f"letter {y!r} is not in the alphabet of {self!r}")

    def letter(self, y, coeff=1):
        self.check_letter(y)
        return Element(self, {(y,): coeff})

    def bracket_letters(self, z, y):
        hit = self._bracket_cache.get((z, y))
        if hit is None:
            hit = {k: Fraction(v) for k, v in self.letter_bracket(z, y).items() if v}
            self._bracket_cache[(z, y)] = hit
        return hit

    def _check_degree(self, word):
        if self.degree is not None:
            total = sum(self.degree(y) for y in word)
            if total > self.max_degree:
                raise DegreeCapExceeded(
                    f"word of degree {total} exceeds cap {self.max_degree} in {self!r}"
                )

    def word_times_letter(self, word, y):
        key = (word, y)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        self._check_degree(word + (y,))
        special = self.absorb(word, y)
        if special is not None:
            out = special
        elif not word:
            out = {(y,): Fraction(1)}
        else:
            z, u = word[-1], word[:-1]
            kz, ky = self.sort_key(z), self.sort_key(y)
            if kz < ky:
                out = {word + (y,): Fraction(1)}
            elif z == y:
                if not self.letter_parity(y):
                    out = {word + (y,): Fraction(1)}
                else:
                    out = {}
                    for l, c in self.bracket_letters(z, z).items():
                        add_into(out, self.word_times_letter(u, l), HALF * c)
            else:
                sign = -1 if (self.letter_parity(z) and self.letter_parity(y)) else 1
                out = {}
                for w, c in self.word_times_letter(u, y).items():
                    add_into(out, self.word_times_letter(w, z), sign * c)
                for l, c in self.bracket_letters(z, y).items():
                    add_into(out, self.word_times_letter(u, l), c)
        self._cache[key] = out
        return out

    def absorb(self, word, y):
        """Hook for quotient relations; return a dict to override the PBW rule."""
        return None

    def mul_keys(self, w1, w2):
        cur = {w1: Fraction(1)}
        for y in w2:
            nxt = {}
            for w, c in cur.items():
                add_into(nxt, self.word_times_letter(w, y), c)
            cur = nxt
        return cur

    def word(self, letters, coeff=1):
        """Normal form of the product of ``letters`` taken in the given order."""
        for y in letters:
            self.check_letter(y)
        cur = {(): Fraction(coeff)}
        for y in letters:
            nxt = {}
            for w, c in cur.items():
                add_into(nxt, self.word_times_letter(w, y), c)
            cur = nxt
        return Element(self, cur)


_GL_CACHE = {}


def gl_enveloping(m, n):
    """U(gl_{m,n}) with letters ``(i, j)`` standing for ``E_{i,j}``."""
    key = (m, n)
    if key not in _GL_CACHE:
        N = m + n
        _GL_CACHE[key] = PBWAlgebra(
            f"gl({m},{n})",
            sort_key=lambda y: y,
            parity=lambda y: gl_parity(y[0], y[1], m),
            bracket=lambda a, b: gl_bracket_units(a, b, m),
            valid=lambda y: isinstance(y, tuple) and len(y) == 2 and 1 <= y[0] <= N and 1 <= y[1] <= N,
        )
    return _GL_CACHE[key]
