"""Exact sparse linear algebra over Q.

Vectors are dicts ``key -> Fraction`` with arbitrary hashable keys; matrices are
lists of such row dicts. Elimination is delegated to sympy's sparse
``DomainMatrix`` over ``QQ``; linear programs to sympy's rational simplex.
"""

from fractions import Fraction

from sympy import QQ
from sympy.polys.matrices import DomainMatrix
from sympy.solvers.simplex import InfeasibleLPError, UnboundedLPError, linprog

from .errors import SpanSolveFailure


def _qq(c):
    c = Fraction(c)
    return QQ(c.numerator, c.denominator)


def _frac(q):
    return Fraction(int(q.numerator), int(q.denominator))


class KeyIndex:
    """Stable enumeration of the coordinate keys that occur in some vectors."""

    def __init__(self, vectors=(), keys=None):
        self.keys = []
        self.pos = {}
        for k in keys or ():
            self.add(k)
        for v in vectors:
            for k in v:
                self.add(k)

    def add(self, k):
        if k not in self.pos:
            self.pos[k] = len(self.keys)
            self.keys.append(k)
        return self.pos[k]

    def __len__(self):
        return len(self.keys)


def _dm_rows(rows, index):
    data = {}
    for r, row in enumerate(rows):
        cols = {index.pos[k]: _qq(c) for k, c in row.items() if c}
        if cols:
            data[r] = cols
    return DomainMatrix(data, (len(rows), max(len(index), 1)), QQ)


def rank(rows):
    """Rank of a list of sparse row vectors."""
    rows = [r for r in rows if r]
    if not rows:
        return 0
    index = KeyIndex(rows)
    return _dm_rows(rows, index).rank()


def row_basis(rows):
    """Reduced row echelon basis of the span as ``(pivot_key, row)`` pairs."""
    rows = [r for r in rows if r]
    if not rows:
        return []
    index = KeyIndex(rows)
    red, pivots = _dm_rows(rows, index).rref()
    sdm = red.to_sdm()
    return [
        (index.keys[p], {index.keys[j]: _frac(c) for j, c in sdm.get(r, {}).items()})
        for r, p in enumerate(pivots)
    ]


def kernel(columns, n_cols=None):
    """Kernel of the map whose j-th column is ``columns[j]`` (a sparse dict).

    Returns basis vectors as dicts ``j -> Fraction``.
    """
    n_cols = len(columns) if n_cols is None else n_cols
    index = KeyIndex(columns)
    data = {}
    for j, col in enumerate(columns):
        for k, c in col.items():
            if c:
                data.setdefault(index.pos[k], {})[j] = _qq(c)
    if n_cols == 0:
        return []
    mat = DomainMatrix(data, (max(len(index), 1), n_cols), QQ)
    null = mat.nullspace().to_sdm()
    return [{j: _frac(c) for j, c in row.items()} for row in null.values()]


def solve_in_span(vectors, target):
    """Coefficients ``c`` with ``Σ c_j vectors[j] = target``, or raise SpanSolveFailure.

    The residual attached to the failure is the part of ``target`` left after
    reducing against the span.
    """
    if not target:
        return [Fraction(0)] * len(vectors)
    index = KeyIndex(list(vectors) + [target])
    nv = len(vectors)
    data = {}
    for j, v in enumerate(list(vectors) + [target]):
        for k, c in v.items():
            if c:
                data.setdefault(index.pos[k], {})[j] = _qq(c)
    mat = DomainMatrix(data, (len(index), nv + 1), QQ)
    red, pivots = mat.rref()
    if nv in pivots:
        residual = reduce_against(row_basis(vectors), target)
        raise SpanSolveFailure("target not in span", residual)
    sdm = red.to_sdm()
    coeffs = [Fraction(0)] * nv
    for r, p in enumerate(pivots):
        coeffs[p] = _frac(sdm.get(r, {}).get(nv, QQ(0)))
    return coeffs


def in_span(vectors, target):
    try:
        solve_in_span(vectors, target)
        return True
    except SpanSolveFailure:
        return False


def reduce_against(basis, v):
    """Reduce ``v`` by an RREF basis (as produced by :func:`row_basis`)."""
    v = dict(v)
    for piv, row in basis:
        c = v.get(piv)
        if c:
            for k, e in row.items():
                nv = v.get(k, 0) - c * e
                if nv:
                    v[k] = nv
                else:
                    v.pop(k, None)
    return v


def cone_is_pointed(gens, dim):
    """True iff the real cone spanned by ``gens`` meets its negative only in 0.

    For each coordinate direction ``±e_k`` we maximise ``±x_k`` over points
    ``x = G u = -G v`` with ``u, v >= 0`` and ``±x_k <= 1``; any positive optimum
    exhibits a nonzero common point.
    """
    gens = [tuple(Fraction(c) for c in g) for g in gens]
    if not gens:
        return True
    k = len(gens)
    # variables: u_1..u_k, v_1..v_k ; x = G u ; constraint G u + G v = 0
    A_eq = [[g[r] for g in gens] + [g[r] for g in gens] for r in range(dim)]
    b_eq = [0] * dim
    for r in range(dim):
        for s in (1, -1):
            row = [s * g[r] for g in gens] + [0] * k
            try:
                val, _ = linprog([-c for c in row], A=[row], b=[1], A_eq=A_eq, b_eq=b_eq)
            except InfeasibleLPError:
                continue
            except UnboundedLPError:
                return False
            if -val > 0:
                return False
    return True
