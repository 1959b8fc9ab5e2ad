"""Support sets as unions of shifted lattice cones, and the shadow machinery.

Weights are tuples of ``Fraction`` in ε-coordinates; a coordinate is
non-integral iff its denominator is not 1, and integer steps never change that.
A :class:`ShiftedCone` is ``base + Σ Z f + Σ Z_+ g`` with linearly independent
generators, which makes membership an exact linear solve.

For a direction ``α`` the set ``n_α^λ = {q : λ + qα ∈ S}`` of a single cone is
an arithmetic progression cut by an interval (or a single point when ``α`` is
not in the span of the generators), so boundedness is decided exactly. The
window enumeration in :func:`classify_direction` is a cross-check, not the
decision.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from math import ceil, floor, gcd, inf

import networkx as nx

from .core import VectorField
from .enveloping import LeviSpec
from .errors import (
    InconsistentShadow,
    InvalidTriangularSplit,
    UndecidedWithinWindow,
    WeightNotInSupport,
)
from .linalg import SpanSolveFailure, cone_is_pointed, rank, reduce_against, row_basis, solve_in_span

DEFAULT_RADIUS = 6
KINDS = ("plus", "minus", "finite", "infinite")


def weight(*coords):
    return tuple(Fraction(c) for c in coords)


def unit(m, i, c=1):
    return tuple(Fraction(c if k == i else 0) for k in range(1, m + 1))


def vadd(a, b, k=1):
    return tuple(x + k * y for x, y in zip(a, b))


def integral_mask(w):
    return tuple(Fraction(c).denominator == 1 for c in w)


def pairing(a, b):
    """Euclidean pairing in ε-coordinates."""
    return sum(Fraction(x) * y for x, y in zip(a, b))


def _vec(v):
    return {i: Fraction(c) for i, c in enumerate(v) if c}


def _lcm(a, b):
    return a * b // gcd(a, b)


# -- cones -----------------------------------------------------------------------


@dataclass(frozen=True)
class ShiftedCone:
    base: tuple
    free: tuple = ()
    plus: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "base", weight(*self.base))
        object.__setattr__(self, "free", tuple(tuple(int(c) for c in g) for g in self.free))
        object.__setattr__(self, "plus", tuple(tuple(int(c) for c in g) for g in self.plus))
        gens = self.gens
        if any(len(g) != self.dim for g in gens):
            raise ValueError("generator length differs from the base weight")
        if rank([_vec(g) for g in gens]) != len(gens):
            raise ValueError("cone generators must be linearly independent")

    @property
    def dim(self):
        return len(self.base)

    @property
    def gens(self):
        return self.free + self.plus

    def _coords(self, lam):
        """Coordinates ``c`` with ``lam = base + Σ c_k gen_k``, or None."""
        diff = _vec(vadd(weight(*lam), self.base, -1))
        if not diff:
            return [Fraction(0)] * len(self.gens)
        try:
            return solve_in_span([_vec(g) for g in self.gens], diff)
        except SpanSolveFailure:
            return None

    def contains(self, lam):
        c = self._coords(lam)
        if c is None:
            return False
        if any(x.denominator != 1 for x in c):
            return False
        return all(x >= 0 for x in c[len(self.free):])

    def line_set(self, lam, alpha):
        """``{q ∈ Z : lam + q·alpha ∈ cone}`` as ``(residue, period, lo, hi)`` or None.

        ``period = 0`` means the single point ``residue``.
        """
        alpha = tuple(Fraction(a) for a in alpha)
        gens = [_vec(g) for g in self.gens]
        diff = _vec(vadd(weight(*lam), self.base, -1))
        try:
            ca = solve_in_span(gens, _vec(alpha))
        except SpanSolveFailure:
            ca = None
        if ca is None:
            # at most one q: solve G c - q alpha = lam - base
            try:
                sol = solve_in_span(gens + [_vec(tuple(-a for a in alpha))], diff)
            except SpanSolveFailure:
                return None
            q = sol[-1]
            if q.denominator != 1 or not self.contains(vadd(lam, alpha, q)):
                return None
            return (int(q), 0, int(q), int(q))
        c0 = self._coords(lam)
        if c0 is None:
            return None
        # integrality of c0 + q ca
        period = 1
        for x in ca:
            period = _lcm(period, x.denominator)
        residue = None
        for q in range(period):
            if all((a + q * b).denominator == 1 for a, b in zip(c0, ca)):
                residue = q
                break
        if residue is None:
            return None
        lo, hi = -inf, inf
        for a, b in zip(c0[len(self.free):], ca[len(self.free):]):
            # a + q b >= 0
            if b > 0:
                lo = max(lo, ceil(-a / b))
            elif b < 0:
                hi = min(hi, floor(-a / b))
            elif a < 0:
                return None
        if lo > hi:
            return None
        return (residue, period, lo, hi)


def _progression_members(prog, lo, hi):
    r, p, a, b = prog
    a, b = max(a, lo), min(b, hi)
    if p == 0:
        return {r} if a <= r <= b else set()
    if a > b:
        return set()
    start = a + ((r - a) % p)
    return set(range(start, b + 1, p))


@dataclass(frozen=True)
class LineSet:
    """Exact description of ``n_α^λ`` as a union of progressions."""

    parts: tuple

    @property
    def empty(self):
        return not self.parts

    def unbounded_above(self):
        return any(p[3] == inf for p in self.parts)

    def unbounded_below(self):
        return any(p[2] == -inf for p in self.parts)

    def members(self, lo, hi):
        out = set()
        for p in self.parts:
            out |= _progression_members(p, lo, hi)
        return out

    def covers_nonnegative(self):
        """Does the set contain every ``q >= 0``?"""
        finite_ends = [x for p in self.parts for x in p[2:] if x not in (inf, -inf)]
        bound = max([0] + [abs(x) for x in finite_ends]) + 1
        period = 1
        for p in self.parts:
            if p[1]:
                period = _lcm(period, p[1])
        if set(range(0, bound + period)) - self.members(0, bound + period - 1):
            return False
        tail = [p for p in self.parts if p[3] == inf]
        residues = set()
        for r, p, _, _ in tail:
            residues |= {x % period for x in range(r, r + period, p or period)}
        return residues == set(range(period))


@dataclass(frozen=True)
class SupportSet:
    components: tuple

    def __post_init__(self):
        comps = tuple(c if isinstance(c, ShiftedCone) else ShiftedCone(**c) for c in self.components)
        object.__setattr__(self, "components", comps)
        dims = {c.dim for c in comps}
        if len(dims) > 1:
            raise ValueError("components of different dimension")

    @property
    def dim(self):
        return self.components[0].dim

    def contains(self, lam):
        return any(c.contains(lam) for c in self.components)

    __contains__ = contains

    def line_set(self, lam, alpha):
        parts = [c.line_set(lam, alpha) for c in self.components]
        return LineSet(tuple(p for p in parts if p is not None))

    def points(self, center, radius):
        """Members ``center + v`` with integer ``v`` in the box ``|v_i| <= radius``."""
        out = []
        for v in product(range(-radius, radius + 1), repeat=self.dim):
            lam = vadd(center, v)
            if self.contains(lam):
                out.append(lam)
        return out

    def anchor(self):
        return self.components[0].base


def product_cone(factors):
    """A single cone from per-coordinate pieces ``(base, kind)`` with kind in
    ``'Z'`` (free), ``'+'`` (base + Z_+), ``'-'`` (base - Z_+), ``'0'`` (point)."""
    m = len(factors)
    base, free, plus = [], [], []
    for i, (b, kind) in enumerate(factors, 1):
        base.append(b)
        if kind == "Z":
            free.append(unit(m, i))
        elif kind == "+":
            plus.append(unit(m, i))
        elif kind == "-":
            plus.append(unit(m, i, -1))
    return SupportSet((ShiftedCone(tuple(base), tuple(free), tuple(plus)),))


# -- roots ----------------------------------------------------------------------


def _rows_with_sum_le(m, cap, skip=None):
    idx = [i for i in range(m) if i != skip]
    for s in product(range(cap + 1), repeat=len(idx)):
        if sum(s) <= cap:
            row = [0] * m
            for i, v in zip(idx, s):
                row[i] = v
            yield tuple(row)


def root_set(m, degree_cap):
    """Roots of W_m (as ε-coordinate tuples) with coefficient sum at most ``degree_cap``."""
    out = set()
    for row in _rows_with_sum_le(m, degree_cap):
        if any(row):
            out.add(row)
    for i in range(m):
        for row in _rows_with_sum_le(m, degree_cap + 1, skip=i):
            r = list(row)
            r[i] = -1
            if sum(r) <= degree_cap:
                out.add(tuple(r))
    return sorted(out)


def delta_prime(m):
    out = []
    for i in range(m):
        for j in range(m):
            if i != j:
                out.append(tuple(int(k == i) - int(k == j) for k in range(m)))
    for i in range(m):
        out.append(tuple(int(k == i) for k in range(m)))
        out.append(tuple(-int(k == i) for k in range(m)))
    return out


def delta_double_prime(m):
    return [a for a in delta_prime(m) if sum(a) == 0]


def is_double_prime(alpha):
    return sum(alpha) == 0 and sorted(alpha) != [0] * len(alpha)


def format_root(alpha):
    parts = []
    for i, c in enumerate(alpha, 1):
        if c:
            sgn = "-" if c < 0 else "+"
            mag = "" if abs(c) == 1 else str(abs(c))
            parts.append(f"{sgn}{mag}e{i}")
    s = "".join(parts) or "0"
    return s[1:] if s.startswith("+") else s


def sl_embedding(m):
    """The sl_{m+1} inside W_m: keys ``("d", i)`` and ``("e", root)``."""
    out = {}
    for i in range(1, m + 1):
        out[("d", i)] = VectorField.euler(m, 0, i)
        out[("e", tuple(-int(k == i) for k in range(1, m + 1)))] = VectorField.partial(m, 0, i)
        euler = VectorField(m, 0)
        for j in range(1, m + 1):
            alpha = tuple(int(k == i) + int(k == j) for k in range(1, m + 1))
            euler = euler + VectorField.basis(m, 0, alpha, (), j)
        out[("e", tuple(int(k == i) for k in range(1, m + 1)))] = -euler
        for j in range(1, m + 1):
            if j != i:
                root = tuple(int(k == i) - int(k == j) for k in range(1, m + 1))
                out[("e", root)] = VectorField.basis(m, 0, unit_int(m, i), (), j)
    return out


def unit_int(m, i):
    return tuple(int(k == i) for k in range(1, m + 1))


# -- Z_+ and Z spans of Δ' vectors (flows) -------------------------------------


def _flow_graph(gens, m, both_ways=False):
    G = nx.DiGraph()
    G.add_nodes_from(range(m + 1))
    for g in gens:
        pos = [i + 1 for i, c in enumerate(g) if c == 1]
        neg = [i + 1 for i, c in enumerate(g) if c == -1]
        if sorted(abs(c) for c in g if c) not in ([1], [1, 1]) or len(pos) > 1 or len(neg) > 1:
            raise ValueError(f"{g} is not in Δ'")
        tail = neg[0] if neg else 0
        head = pos[0] if pos else 0
        G.add_edge(tail, head, weight=0)
        if both_ways:
            G.add_edge(head, tail, weight=0)
    return G


def in_nonneg_span(v, gens, m, integer=True, both_ways=False):
    """Is the integer vector ``v`` in the Z_+-span (Z-span if ``both_ways``) of Δ' vectors?

    Vectors of Δ' are edges of a graph on ``{0, 1..m}`` (``ε_i - ε_j`` is
    ``j → i``, ``ε_i`` is ``0 → i``, ``-ε_i`` is ``i → 0``); ``v`` is in the span
    iff the flow problem with demand ``v_i`` at node ``i`` is feasible.
    """
    if not any(v):
        return True
    G = _flow_graph(gens, m, both_ways)
    for i in range(1, m + 1):
        G.nodes[i]["demand"] = int(v[i - 1])
    G.nodes[0]["demand"] = -int(sum(v))
    try:
        nx.network_simplex(G)
    except nx.NetworkXUnfeasible:
        return False
    return True


def in_z_span(v, gens, m):
    return in_nonneg_span(v, gens, m, both_ways=True)


# -- shadow ---------------------------------------------------------------------


def classify_direction(S, lam, alpha, radius=DEFAULT_RADIUS):
    lam = weight(*lam)
    if not S.contains(lam):
        raise WeightNotInSupport(f"{lam} not in support")
    ls = S.line_set(lam, alpha)
    window = {q for q in range(-radius, radius + 1) if S.contains(vadd(lam, alpha, q))}
    if window != ls.members(-radius, radius):
        raise UndecidedWithinWindow(f"direction {alpha}: window enumeration and cone description disagree")
    up, down = ls.unbounded_above(), ls.unbounded_below()
    if up and down:
        return "infinite"
    if up:
        return "minus"
    if down:
        return "plus"
    return "finite"


def gamma_set(S, lam):
    """``{α ∈ Δ' : lam + Z_+ α ⊆ S}`` (the generators of Γ)."""
    lam = weight(*lam)
    return [a for a in delta_prime(S.dim) if S.line_set(lam, a).covers_nonnegative()]


@dataclass
class ShadowPartition:
    m: int
    plus: list = field(default_factory=list)
    minus: list = field(default_factory=list)
    finite: list = field(default_factory=list)
    infinite: list = field(default_factory=list)
    gamma: list = field(default_factory=list)

    def part(self, kind):
        return getattr(self, kind)

    def kind_of(self, alpha):
        for k in KINDS:
            if tuple(alpha) in self.part(k):
                return k
        raise KeyError(alpha)

    def key(self):
        return tuple(tuple(sorted(self.part(k))) for k in KINDS)

    def double_prime(self, kind):
        return [a for a in self.part(kind) if sum(a) == 0]

    def flags(self):
        """Diagnostics that a simple-module support must pass."""
        out = []
        if self.finite and len(self.finite) == len(delta_prime(self.m)):
            out.append("all directions finite (trivial support)")
        if any(sum(a) != 0 for a in self.finite):
            out.append("finite part not inside Δ''")
        for i in range(self.m):
            e = tuple(int(k == i) for k in range(self.m))
            ne = tuple(-c for c in e)
            if e not in self.gamma and ne not in self.gamma:
                out.append(f"neither ±e{i + 1} in Γ")
        for a in self.finite:
            for b in self.infinite:
                if pairing(a, b):
                    out.append(f"{format_root(a)} not orthogonal to {format_root(b)}")
        return out

    def as_dict(self):
        return {k: [format_root(a) for a in sorted(self.part(k))] for k in KINDS}


def shadow(S, lam, radius=DEFAULT_RADIUS):
    lam = weight(*lam)
    sp = ShadowPartition(S.dim)
    for a in delta_prime(S.dim):
        sp.part(classify_direction(S, lam, a, radius)).append(a)
    sp.gamma = gamma_set(S, lam)
    gam = set(sp.gamma)
    # reformulation through Γ
    for a in delta_prime(S.dim):
        na = tuple(-c for c in a)
        expect = {
            (False, True): "plus",
            (True, False): "minus",
            (True, True): "infinite",
            (False, False): "finite",
        }[(a in gam, na in gam)]
        if sp.kind_of(a) != expect:
            raise UndecidedWithinWindow(
                f"direction {format_root(a)}: line classification {sp.kind_of(a)} but Γ gives {expect}"
            )
    return sp


# -- K_λ and extremality ---------------------------------------------------------


def k_lambda(S, lam):
    lam = weight(*lam)
    if not S.contains(lam):
        raise WeightNotInSupport(f"{lam} not in support")
    return frozenset(a for a in delta_prime(S.dim) if not S.contains(vadd(lam, a)))


@dataclass(frozen=True)
class ExtremalCertificate:
    extremal: bool
    radius: int
    witness: tuple = None

    def __bool__(self):
        return self.extremal


def is_extremal(S, lam, radius=DEFAULT_RADIUS):
    K = k_lambda(S, lam)
    for mu in S.points(weight(*lam), radius):
        if K < k_lambda(S, mu):
            return ExtremalCertificate(False, radius, mu)
    return ExtremalCertificate(True, radius)


def extremal_weights(S, radius=2, certify=DEFAULT_RADIUS, center=None):
    """Window-certified extremal weights within ``radius`` of the anchor."""
    center = S.anchor() if center is None else weight(*center)
    return [mu for mu in S.points(center, radius) if is_extremal(S, mu, certify)]


# -- parabolic decomposition ------------------------------------------------------


def _pointed_after_projection(gens, kernel_gens, dim):
    basis = row_basis([_vec(g) for g in kernel_gens])
    reduced = []
    for g in gens:
        r = reduce_against(basis, _vec(g))
        reduced.append(tuple(r.get(i, Fraction(0)) for i in range(dim)))
    return cone_is_pointed([r for r in reduced if any(r)], dim), reduced


def is_triangular(plus, minus, dim, modulo=()):
    """``⟨-p(plus) ∪ p(minus)⟩_{R+} ∩ ⟨-p(minus) ∪ p(plus)⟩_{R+} = {0}`` modulo ``span(modulo)``."""
    gens = [tuple(-c for c in a) for a in plus] + [tuple(a) for a in minus]
    ok, reduced = _pointed_after_projection(gens, modulo, dim)
    if not ok:
        return False
    if any(not any(r) for r in reduced):
        return False
    pp = {r for r in reduced[: len(plus)]}
    pm = {tuple(-c for c in r) for r in reduced[len(plus):]}
    return not (pp & pm)


@dataclass
class ParabolicDecomposition:
    plus: list
    zero: list
    minus: list
    prime_plus: list
    prime_minus: list

    def as_dict(self):
        return {
            "plus": [format_root(a) for a in self.plus],
            "zero": [format_root(a) for a in self.zero],
            "minus": [format_root(a) for a in self.minus],
        }


def f0_roots(sp, lam):
    return [a for a in sp.finite if pairing(lam, a) == 0]


def default_split(roots):
    """A triangular split of a Δ''-subset: positive iff the first nonzero coordinate is positive."""
    plus = [a for a in roots if next(c for c in a if c) > 0]
    minus = [a for a in roots if a not in plus]
    return plus, minus


def parabolic_decomposition(sp, lam, tri=None, degree_cap=3):
    lam = weight(*lam)
    m = sp.m
    f0 = f0_roots(sp, lam)
    tri_plus, tri_minus = default_split(f0) if tri is None else (list(tri[0]), list(tri[1]))
    if sorted(map(tuple, tri_plus + tri_minus)) != sorted(f0) or set(map(tuple, tri_plus)) & set(map(tuple, tri_minus)):
        raise InvalidTriangularSplit("split is not a partition of the F0 roots")
    if f0 and not is_triangular(tri_plus, tri_minus, m):
        raise InvalidTriangularSplit("split fails the triangular cone condition")
    pplus = list(sp.plus) + [a for a in sp.finite if pairing(lam, a) > 0] + [tuple(a) for a in tri_plus]
    pminus = list(sp.minus) + [a for a in sp.finite if pairing(lam, a) < 0] + [tuple(a) for a in tri_minus]
    roots = root_set(m, degree_cap)
    zero = [a for a in roots if in_z_span(a, sp.infinite, m)]
    span_plus = pplus + list(sp.infinite)
    plus = [a for a in roots if a not in zero and in_nonneg_span(a, span_plus, m)]
    minus = [a for a in roots if a not in zero and a not in plus]
    return ParabolicDecomposition(plus, zero, minus, pplus, pminus)


def check_parabolic(pd, m):
    """The three parts are disjoint, and the projection modulo span(zero) is triangular."""
    if set(pd.plus) & set(pd.minus) or set(pd.plus) & set(pd.zero) or set(pd.minus) & set(pd.zero):
        return False
    return is_triangular(pd.plus, pd.minus, m, modulo=pd.zero)


# -- closure lemmas ---------------------------------------------------------------


@dataclass
class ClosureReport:
    extremal_radius: int
    k_lambda: list
    closure_k: list
    closure_kbar: list
    k_formula: bool
    corollary_match: bool
    diagnostics: list

    @property
    def ok(self):
        return not self.closure_k and not self.closure_kbar and self.k_formula and self.corollary_match

    def as_dict(self):
        return {
            "extremal_radius": self.extremal_radius,
            "k_lambda": [format_root(a) for a in sorted(self.k_lambda)],
            "closure_k_failures": [[format_root(a), format_root(b)] for a, b in self.closure_k],
            "closure_kbar_failures": [[format_root(a), format_root(b)] for a, b in self.closure_kbar],
            "k_formula": self.k_formula,
            "corollary_match": self.corollary_match,
            "diagnostics": self.diagnostics,
        }


def check_closure_lemmas(S, lam, radius=DEFAULT_RADIUS, sp=None):
    lam = weight(*lam)
    sp = shadow(S, lam, radius) if sp is None else sp
    K = k_lambda(S, lam)
    dp = delta_prime(S.dim)
    Kbar = frozenset(dp) - K
    bad_k, bad_kbar = [], []
    dset = set(dp)
    for a, b in combinations(dp, 2):
        s = vadd(a, b)
        if s not in dset:
            continue
        if a in K and b in K and s not in K:
            bad_k.append((a, b))
        if a in Kbar and b in Kbar and s not in Kbar:
            bad_kbar.append((a, b))
    formula = set(sp.plus) | {a for a in sp.finite if pairing(lam, a) >= 0}
    negK = {tuple(-c for c in a) for a in K}
    negKbar = {tuple(-c for c in a) for a in Kbar}
    c_plus = K - negK
    c_minus = Kbar - negKbar
    c_zero = (K & negK) | (Kbar & negKbar)
    f_plus = set(sp.plus) | {a for a in sp.finite if pairing(lam, a) > 0}
    f_minus = set(sp.minus) | {a for a in sp.finite if pairing(lam, a) < 0}
    f_zero = set(sp.infinite) | {a for a in sp.finite if pairing(lam, a) == 0}
    corollary = (set(c_plus), set(c_minus), set(c_zero)) == (f_plus, f_minus, f_zero)
    return ClosureReport(radius, sorted(K), bad_k, bad_kbar, set(K) == formula, corollary, sp.flags())


def deltazero_check(sp, lam, degree_cap=3):
    """``⟨F0⟩_Z ∩ Δ = F0`` for the roots of the finite part orthogonal to ``lam``."""
    f0 = f0_roots(sp, weight(*lam))
    roots = root_set(sp.m, degree_cap)
    span = {a for a in roots if f0 and in_z_span(a, f0, sp.m)}
    return span == set(f0)


# -- Levi shape --------------------------------------------------------------------


@dataclass(frozen=True)
class LeviShape:
    """Levi data of a shadow. ``free`` are the indices with ``ε_i`` in the infinite
    part, ``blocks`` the components of the remaining indices (singletons
    included, each a gl_1). ``spec`` relabels so the free indices come first."""

    m: int
    free: tuple
    blocks: tuple

    @property
    def q(self):
        return len(self.free)

    def relabel(self):
        order = list(self.free) + [i for b in self.blocks for i in b]
        return {old: new for new, old in enumerate(order, 1)}

    def spec(self, n=0):
        r = self.relabel()
        return LeviSpec(q=self.q, n=n, m=self.m, blocks=tuple(tuple(r[i] for i in b) for b in self.blocks))

    def as_dict(self):
        return {"q": self.q, "free": list(self.free), "blocks": [list(b) for b in self.blocks]}


def levi_shape(sp):
    if any(sum(a) != 0 for a in sp.finite):
        raise InconsistentShadow("finite part is not contained in Δ''")
    for a in sp.finite:
        for b in sp.infinite:
            if pairing(a, b):
                raise InconsistentShadow(f"{format_root(a)} and {format_root(b)} are not orthogonal")
    m = sp.m
    inf_set = set(sp.infinite)
    free = tuple(i for i in range(1, m + 1) if unit_int(m, i) in inf_set)
    rest = [i for i in range(1, m + 1) if i not in free]
    G = nx.Graph()
    G.add_nodes_from(rest)
    for i, j in combinations(rest, 2):
        a = tuple(int(k == i) - int(k == j) for k in range(1, m + 1))
        if a in inf_set:
            G.add_edge(i, j)
    blocks = tuple(sorted(tuple(sorted(c)) for c in nx.connected_components(G)))
    return LeviShape(m, free, blocks)
