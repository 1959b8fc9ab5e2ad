"""Simplicity of tensor modules and the trichotomy for simple bounded W-modules.

The decision table is symbolic (descriptors, module tags); every verdict also
carries window evidence computed on a finite weight box, which is all that a
finite computation can certify.
"""

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import inf

from .core import basis_fields
from .descriptors import ModuleDescriptor
from .errors import NotClassifiable, SignatureMismatch, UndecidedWithinWindow, UnknownTag
from .geometry import (
    ShiftedCone,
    SupportSet,
    delta_double_prime,
    format_root,
    shadow,
)
from .glreps import (
    DescriptorGlModule,
    FinDimModule,
    fundamental_module,
    str_level,
    trivial_module,
)
from .linalg import rank, reduce_against, row_basis
from .tensor import Diff, TensorModule, WindowModule, window_box

KINDS = ("nonfundamental", "trivial", "str", "fundamental")


def _fmt(c):
    return str(Fraction(c))


def _fmt_weight(w):
    return [_fmt(c) for c in w]


def _box(m, window):
    """A window is an integer radius or an explicit per-coordinate box."""
    return window_box(m, window) if isinstance(window, int) else tuple(window)


# -- module tags ------------------------------------------------------------------------


@dataclass
class GlTag:
    """A simple weight gl_{m,n}-module together with what is known about it.

    ``kind`` is one of ``nonfundamental``, ``trivial``, ``str`` (Str or Π(Str))
    or ``fundamental``; fundamental tags record ``P'`` (a K_{n,m} descriptor) and
    the level ``λ(E)``.
    """

    kind: str
    m: int
    n: int
    module: object
    source: ModuleDescriptor = None
    level: Fraction = None
    name: str = ""

    def __post_init__(self):
        if self.kind not in KINDS:
            raise UnknownTag(f"unknown module kind {self.kind!r}")
        if self.kind != "nonfundamental" and self.source is None:
            raise UnknownTag("fundamental tags need their K(n,m) descriptor")

    @property
    def is_fundamental(self):
        return self.kind != "nonfundamental"

    def as_dict(self):
        out = {"kind": self.kind, "name": self.name}
        if self.source is not None:
            out["source"] = self.source.to_string()
            out["level"] = _fmt(self.level)
        return out


def tag_trivial(m, n, parity=0):
    src = ModuleDescriptor.A(n, m, parity)
    mod = trivial_module(m, n)
    return GlTag("trivial", m, n, mod.flip() if parity else mod, src, Fraction(0), "Pi(trivial)" if parity else "trivial")


def tag_str(m, n, parity=0):
    src = ModuleDescriptor.A_sigma(n, m)
    if parity:
        src = src.flip()
    mod = fundamental_module(src, str_level(m, n), m, n)
    return GlTag("str", m, n, mod, src, Fraction(str_level(m, n)), "Pi(Str)" if parity else "Str")


def tag_fundamental(source, level, m, n):
    """``P'[level]``; trivial and Str-like levels are recognised and retagged."""
    level = Fraction(level)
    mod = fundamental_module(source, level, m, n)
    name = f"{source.to_string()}[{level}]"
    if source.is_A() and level == 0:
        return GlTag("trivial", m, n, mod, source, level, name)
    if source.is_A_sigma() and level == str_level(m, n):
        return GlTag("str", m, n, mod, source, level, name)
    return GlTag("fundamental", m, n, mod, source, level, name)


def tag_nonfundamental(module, name=""):
    return GlTag("nonfundamental", module.m, module.n, module, name=name or getattr(module, "name", ""))


# -- simplicity decision table ------------------------------------------------------------


@dataclass
class SimplicityVerdict:
    simple: bool
    rule: str
    tag: str
    submodule: dict = None
    reason: str = ""

    def as_dict(self):
        return {
            "simple": self.simple,
            "rule": self.rule,
            "tag": self.tag,
            "submodule": self.submodule,
            "reason": self.reason,
        }


def simplicity_classify(P, M):
    """Decide simplicity of ``F(P, M)`` from the descriptor of ``P`` and the tag of ``M``."""
    if (P.m, P.n) != (M.m, M.n):
        raise SignatureMismatch("P and M have different signatures")
    if M.kind == "nonfundamental":
        return SimplicityVerdict(True, "1", "Simple", reason="M is not fundamental")
    if M.kind == "trivial":
        if P.is_A():
            return SimplicityVerdict(
                False, "2d", "NotSimpleTrivialPair", {"kind": "trivial"}, "M trivial and P is A up to parity"
            )
        return SimplicityVerdict(True, "2d", "Simple", reason="M trivial and P is not A up to parity")
    lower = {"kind": "diff", "source": M.source.to_string(), "level": _fmt(M.level - 1)}
    if M.kind == "str":
        if P.sum_partials_is_everything():
            return SimplicityVerdict(True, "2e", "Simple", reason="M Str-like and P = Σ∂_s P")
        return SimplicityVerdict(False, "2e+2c", "UniqueSimpleSubmodule", lower, "M Str-like and P ≠ Σ∂_s P")
    return SimplicityVerdict(False, "2a+2c", "UniqueSimpleSubmodule", lower, "M fundamental, neither trivial nor Str-like")


def f2_simplicity(S, F_verdict):
    """Simplicity of ``𝓕(F(P,M), S)``: simple iff S is nontrivial or F(P,M) is simple."""
    if not S.is_trivial():
        return SimplicityVerdict(True, "F2-1", "Simple", reason="S is nontrivial")
    return SimplicityVerdict(
        F_verdict.simple, "F2-2", F_verdict.tag, F_verdict.submodule, "S trivial: " + F_verdict.reason
    )


# -- the Δ'' condition ---------------------------------------------------------------------


def level_support(desc, level):
    """Support of the level set ``desc[level]`` of a K_{2,0} descriptor, seen through
    ``E_ij ↦ t_i ∂_j`` (weight = exponent vector).

    The first exponent ``e`` ranges over an interval of ``origin + Z`` cut out by
    the two factors; the second is ``level - e``.
    """
    if (desc.m, desc.n) != (2, 0):
        raise SignatureMismatch("level supports are implemented for K(2,0) descriptors")
    level = Fraction(level)
    f1, f2 = desc.factors
    e0 = f1.origin()
    if (level - e0 - f2.origin()).denominator != 1:
        return SupportSet(())
    lo, hi = -inf, inf
    if f1.kind == "P":
        lo = Fraction(0)
    elif f1.kind == "Q":
        hi = Fraction(-1)
    if f2.kind == "P":
        hi = min(hi, level)
    elif f2.kind == "Q":
        lo = max(lo, level + 1)
    line = (Fraction(1), Fraction(-1))
    if lo == -inf and hi == inf:
        return SupportSet((ShiftedCone((e0, level - e0), (line,), ()),))
    if hi == inf:
        return SupportSet((ShiftedCone((lo, level - lo), (), (line,)),))
    if lo == -inf:
        return SupportSet((ShiftedCone((hi, level - hi), (), ((Fraction(-1), Fraction(1)),)),))
    if lo > hi:
        return SupportSet(())
    pts = [ShiftedCone((lo + k, level - lo - k), (), ()) for k in range(int(hi - lo) + 1)]
    return SupportSet(tuple(pts))


def level_module(desc, level):
    """``desc[level]`` over gl_2 via ``E_ij ↦ t_i ∂_j`` (weight spaces are 1-dimensional)."""
    return DescriptorGlModule(desc, 2, 0, level, index_map=(1, 2), name=f"{desc.to_string()}[{Fraction(level)}]")


@dataclass
class HCReport:
    verdict: bool
    lhs: list
    rhs: list
    p_shadow: dict = None
    v_shadow: dict = None

    def as_dict(self):
        return {
            "verdict": self.verdict,
            "lhs": [format_root(a) for a in self.lhs],
            "rhs": [format_root(a) for a in self.rhs],
            "p_shadow": self.p_shadow,
            "v_shadow": self.v_shadow,
        }


def hc_condition(P1, v1_shadow, report=False):
    """``(Δ''^I_P ⊔ Δ''^-_P) ⊆ (Δ''^F_V ⊔ Δ''^-_V)`` for a K_m descriptor ``P1``."""
    m = P1.m
    dd = delta_double_prime(m)
    if not dd:
        rep = HCReport(True, [], [])
        return rep if report else rep.verdict
    try:
        sp = shadow(P1.support(), P1.origin())
    except UndecidedWithinWindow as exc:
        raise NotClassifiable(str(exc)) from exc
    lhs = [a for a in dd if sp.kind_of(a) in ("infinite", "minus")]
    if v1_shadow is None:
        rhs = list(dd)
    else:
        rhs = [a for a in dd if v1_shadow.kind_of(a) in ("finite", "minus")]
    verdict = set(lhs) <= set(rhs)
    rep = HCReport(verdict, lhs, rhs, sp.as_dict(), None if v1_shadow is None else v1_shadow.as_dict())
    return rep if report else rep.verdict


def level_shadow(desc, level):
    S = level_support(desc, level)
    if not S.components:
        raise NotClassifiable("empty level set")
    try:
        return shadow(S, S.anchor())
    except UndecidedWithinWindow as exc:
        raise NotClassifiable(str(exc)) from exc


def _interval_count(constraints):
    lo, hi = -inf, inf
    for a, b in constraints:
        lo, hi = max(lo, a), min(hi, b)
    if lo == -inf or hi == inf:
        return inf
    return max(0, int(hi - lo) + 1)


def product_bound(P1, desc, level, gamma):
    """Exact ``dim F(P1, V)_γ = Σ_β dim P1_{γ-β} dim V_β`` for ``V = desc[level]`` (both
    with one-dimensional weight spaces), by interval arithmetic on the line
    ``β = (e, level - e)``. Returns ``inf`` for infinite weight spaces."""
    gamma = tuple(Fraction(c) for c in gamma)
    level = Fraction(level)
    f1, f2 = desc.factors
    g1, g2 = P1.factors
    e0 = f1.origin()
    if (level - e0 - f2.origin()).denominator != 1:
        return 0
    if (gamma[0] - e0 - g1.origin()).denominator != 1 or (gamma[1] - level + e0 - g2.origin()).denominator != 1:
        return 0
    # e = e0 + k, k integer
    cons = []

    def bound(kind, sign, offset):
        # constraint on  sign*k + offset  being allowed by factor kind
        if kind == "L":
            return None
        lo_val = 0 if kind == "P" else -inf
        hi_val = inf if kind == "P" else -1
        if sign > 0:
            return (lo_val - offset, hi_val - offset)
        return (offset - hi_val, offset - lo_val)

    for kind, sign, offset in (
        (f1.kind, 1, e0),
        (f2.kind, -1, level - e0),
        (g1.kind, -1, gamma[0] - e0),
        (g2.kind, 1, gamma[1] - level + e0),
    ):
        b = bound(kind, sign, offset)
        if b is not None:
            lo, hi = b
            lo = lo if lo == -inf else Fraction(lo)
            hi = hi if hi == inf else Fraction(hi)
            lo = lo if lo == -inf else -((-lo) // 1)
            hi = hi if hi == inf else hi // 1
            cons.append((lo, hi))
    return _interval_count(cons)


def window_weight_dim(P1, V, gamma, radius):
    """``Σ_β dim P1_{γ-β} dim V_β`` over ``β`` in the box of the given radius around
    the anchor of ``supp V`` (direct enumeration)."""
    S = level_support(V.desc, V.level)
    anchor = S.anchor()
    total = 0
    for off in product(range(-radius, radius + 1), repeat=2):
        beta = tuple(a + o for a, o in zip(anchor, off))
        vs = V.labels_of_hweight(beta)
        if not vs:
            continue
        ps = P1.labels_of_weight(tuple(g - b for g, b in zip(gamma, beta)))
        total += len(vs) * len(ps)
    return total


# -- window evidence -----------------------------------------------------------------------


def _span_rows(vecs):
    return row_basis([v for v in vecs if v])


def generation_evidence(F, window, degree=2, samples=10, seed=0):
    """Grow the submodule generated by random window vectors inside the window.

    Returns per-sample ``(start weight, reached weights, full)`` where ``full``
    means every window weight space was reached in full dimension.
    """
    rng = random.Random(seed)
    fields = basis_fields(F.m, F.n, degree)
    weights = window.weights()
    dims = window.dims()
    results = []
    for _ in range(samples):
        g = weights[rng.randrange(len(weights))]
        labs = window.spaces[g]
        v = {lab: Fraction(rng.randint(-3, 3) or 1) for lab in labs}
        span = {g: _span_rows([v])}
        queue = [v]
        while queue:
            w = queue.pop()
            for x in fields:
                u = F.act_field(x, w)
                if not u:
                    continue
                gam = F.weight(next(iter(u)))
                if gam not in dims:
                    continue
                basis = span.get(gam, [])
                if len(basis) == dims[gam]:
                    continue
                r = reduce_against(basis, u)
                if r:
                    span[gam] = _span_rows([row for _, row in basis] + [r])
                    queue.append(r)
        reached = sorted(k for k, b in span.items() if b)
        full = all(len(span.get(k, [])) == dims[k] for k in weights)
        results.append({"start": _fmt_weight(g), "reached": len(reached), "full": full})
    return {
        "samples": results,
        "window_weights": len(weights),
        "window_dim": window.total_dim,
        "all_full": all(r["full"] for r in results),
        "degree": degree,
        "seed": seed,
        "scope": "window-limited",
    }


class DiffImage:
    """Image of ``diff : F(P, P'[λ-1]) → F(P, P'[λ])``, computed weight by weight on demand."""

    def __init__(self, P, source, level, m, n):
        self.low = TensorModule(P, DescriptorGlModule(source, m, n, Fraction(level) - 1))
        self.high = TensorModule(P, DescriptorGlModule(source, m, n, Fraction(level)))
        self.diff = Diff(P, source)
        self._cache = {}

    def at(self, gamma):
        hit = self._cache.get(gamma)
        if hit is None:
            images = [self.diff({lab: Fraction(1)}) for lab in self.low.labels_of_weight(gamma)]
            hit = _span_rows(images)
            self._cache[gamma] = hit
        return hit

    def witnesses(self, gamma):
        """Labels of ``P'[λ-1]`` whose tensors with P have nonzero image at ``gamma``."""
        out = set()
        for lab in self.low.labels_of_weight(gamma):
            if self.diff({lab: Fraction(1)}):
                out.add(lab[1])
        return out


def diff_evidence(P, M, radius=1, degree=2):
    """Window evidence that ``diff(F(P, P'[λ-1]))`` is a proper nonzero invariant subspace
    of ``F(P, P'[λ])``."""
    img = DiffImage(P, M.source, M.level, M.m, M.n)
    window = WindowModule(img.high, _box(P.m, radius))
    ranks, total_rank = {}, 0
    lam_candidates = set()
    for g in window.weights():
        r = len(img.at(g))
        ranks[g] = r
        total_rank += r
        if r:
            lam_candidates |= img.witnesses(g)
    fields = basis_fields(P.m, P.n, degree)
    escapes = 0
    checked = 0
    for g in window.weights():
        for _, row in img.at(g):
            for x in fields:
                u = img.high.act_field(x, row)
                checked += 1
                if not u:
                    continue
                gam = img.high.weight(next(iter(u)))
                if reduce_against(img.at(gam), u):
                    escapes += 1
    gl_low = img.low.M
    lam_prime = min((tuple(gl_low.gl_weight(lab)) for lab in lam_candidates), default=None)
    return {
        "window_dim": window.total_dim,
        "image_rank": total_rank,
        "nonzero": total_rank > 0,
        "proper": 0 < total_rank < window.total_dim,
        "invariant": escapes == 0,
        "invariance_checks": checked,
        "escapes": escapes,
        "degree": degree,
        "ranks": {",".join(_fmt_weight(g)): [ranks[g], len(window.spaces[g])] for g in window.weights()},
        "lambda_prime": None if lam_prime is None else _fmt_weight(lam_prime),
        "lambda_prime_level": _fmt(M.level - 1),
    }


def trivial_evidence(P, M, degree=3):
    """The constants ``1 ⊗ v`` span a W-invariant line in ``F(A, A[0])``."""
    F = TensorModule(P, M.module)
    v = {(P.labels_of_weight((0,) * P.m)[0], 0): Fraction(1)}
    bad = sum(1 for x in basis_fields(P.m, P.n, degree) if F.act_field(x, v))
    return {"invariant_line": bad == 0, "fields_checked": len(basis_fields(P.m, P.n, degree)), "degree": degree}


# -- three-case classification ---------------------------------------------------------------


@dataclass
class ClassificationVerdict:
    case: str
    lemma: SimplicityVerdict
    hc: bool
    evidence: dict = field(default_factory=dict)
    P: str = ""
    M: dict = None
    notes: list = field(default_factory=list)

    @property
    def ok(self):
        ev = self.evidence
        if self.case == "i":
            return ev.get("all_full", False)
        if self.case == "ii":
            return ev.get("proper", False) and ev.get("nonzero", False) and ev.get("invariant", False)
        if self.case == "iii":
            return ev.get("invariant_line", False)
        return False

    def as_dict(self):
        return {
            "case": self.case,
            "P": self.P,
            "M": self.M,
            "lemma": self.lemma.as_dict(),
            "hc_condition": self.hc,
            "evidence": self.evidence,
            "evidence_ok": self.ok,
            "notes": self.notes,
        }


def main_theorem_classify(P, M, radius=1, degree=2, seed=0, v_shadow=None, evidence=True):
    """Place ``F(P, M)`` (or its unique simple submodule) in the trichotomy.

    ``v_shadow`` is the shadow partition of an infinite-dimensional ``M``;
    finite-dimensional modules have every Δ'' direction finite.
    """
    lemma = simplicity_classify(P, M)
    hc = hc_condition(P, v_shadow) if P.m >= 2 and v_shadow is not None else True
    verdict = ClassificationVerdict("none", lemma, hc, P=P.to_string(), M=M.as_dict())
    if lemma.simple:
        if not hc:
            verdict.notes.append("F(P,M) is simple but has infinite-dimensional weight spaces")
            return verdict
        verdict.case = "i"
        if evidence:
            F = TensorModule(P, M.module)
            window = WindowModule(F, _box(P.m, radius))
            verdict.evidence = generation_evidence(F, window, degree, seed=seed)
        return verdict
    if M.kind == "trivial":
        verdict.case = "iii"
        if evidence:
            verdict.evidence = trivial_evidence(P, M, degree + 1)
        return verdict
    if not isinstance(M.module, FinDimModule):
        verdict.notes.append("fundamental module is infinite-dimensional")
        return verdict
    verdict.case = "ii"
    if evidence:
        verdict.evidence = diff_evidence(P, M, radius, degree)
    return verdict


# -- non-fundamental certificates --------------------------------------------------------------


def _character(mod):
    return sorted((tuple(mod.gl_weight(k)), mod.parity_of(k)) for k in range(mod.dim))


def fundamental_candidates(m, n, level):
    """Finite fundamental modules ``P'[level]`` with ``P'`` ∈ {A, A^σ} up to parity."""
    out = []
    for base in (ModuleDescriptor.A(n, m), ModuleDescriptor.A_sigma(n, m)):
        for src in (base, base.flip()):
            mod = DescriptorGlModule(src, m, n, level)
            if mod.is_finite() and mod.labels():
                out.append(mod.materialize())
    return out


def certify_nonfundamental(mod):
    """Sufficient test that a finite-dimensional simple gl_{m,n}-module is not fundamental.

    Fundamental weights have ``E_aa ∈ {0, 1}`` for ``a <= m`` (those coordinates are
    odd-variable degrees) and constant level ``Σ E_aa``. If both hold, the character
    is compared with every fundamental module from ``A`` or ``A^σ`` at that level;
    for ``n = 1`` the Laurent levels with the same ``E_{m+1,m+1}`` residue are
    compared too.
    """
    m, n = mod.m, mod.n
    weights = [tuple(mod.gl_weight(k)) for k in range(mod.dim)]
    if any(w[a] not in (0, 1) for w in weights for a in range(m)):
        return True
    levels = {sum(w) for w in weights}
    if len(levels) != 1:
        return True
    level = levels.pop()
    char = _character(mod)
    cands = fundamental_candidates(m, n, level)
    if n == 1:
        from .descriptors import shift

        lam = weights[0][m]
        if lam.denominator != 1:
            for par in (0, 1):
                src = ModuleDescriptor(1, m, (shift(lam - lam.numerator // lam.denominator),), par)
                cand = DescriptorGlModule(src, m, n, level)
                if cand.labels():
                    cands.append(cand.materialize())
    return all(_character(c) != char for c in cands)
