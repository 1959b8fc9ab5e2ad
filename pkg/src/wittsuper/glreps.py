"""Finite-dimensional and descriptor-backed modules over gl_{m,n}.

Matrices are sparse: ``action[(i, j)]`` maps a column index to ``{row: coeff}``,
so ``E_ij · e_col = Σ coeff · e_row``. Words of U(gl) act right to left.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from .algebra import add_into
from .core import gl_bracket_units, gl_parity
from .errors import (
    GradationError,
    NotAKacModule,
    NotMaterializable,
    SignatureMismatch,
)
from .linalg import kernel, rank, reduce_against, row_basis
from .weyl import weyl_algebra


def gl_units(m, n):
    N = m + n
    return [(i, j) for i in range(1, N + 1) for j in range(1, N + 1)]


def gl0_units(m, n):
    return [u for u in gl_units(m, n) if not zdegree(u, m)]


def zdegree(u, m):
    i, j = u
    return int(j > m) - int(i > m)


def _clean(v):
    return {k: c for k, c in v.items() if c}


class GlModuleBase:
    """Shared behaviour: words, elements, bracket test on a set of labels."""

    m: int
    n: int

    def act_word(self, word, vec):
        for u in reversed(word):
            vec = self.act_unit_vec(u, vec)
            if not vec:
                return {}
        return vec

    def act_unit_vec(self, u, vec):
        out = {}
        for lab, c in vec.items():
            add_into(out, self.act_unit(u, lab), c)
        return out

    def act_pbw(self, element, vec):
        """Action of an element of U(gl) (a :class:`PBWAlgebra` element)."""
        out = {}
        for word, c in element.terms.items():
            add_into(out, self.act_word(word, vec), c)
        return out

    def act_gl(self, x, vec):
        out = {}
        for u, c in x.entries.items():
            add_into(out, self.act_unit_vec(u, vec), c)
        return out

    def bracket_failures(self, labels, units=None):
        """Unit pairs ``(a, b)`` whose super-commutator is not represented correctly."""
        m = self.m
        fails = []
        units = gl_units(self.m, self.n) if units is None else units
        for a in units:
            for b in units:
                sign = -1 if gl_parity(*a, m) and gl_parity(*b, m) else 1
                for lab in labels:
                    v = {lab: Fraction(1)}
                    lhs = self.act_unit_vec(a, self.act_unit_vec(b, v))
                    add_into(lhs, self.act_unit_vec(b, self.act_unit_vec(a, v)), -sign)
                    rhs = {}
                    for u, c in gl_bracket_units(a, b, m).items():
                        add_into(rhs, self.act_unit(u, lab), c)
                    add_into(lhs, rhs, -1)
                    if lhs:
                        fails.append((a, b, lab))
                        break
        return fails

    def hweight(self, lab):
        """Weight restricted to ``E_11..E_mm`` (the part the even Cartan of W sees)."""
        return self.gl_weight(lab)[: self.m]


@dataclass
class FinDimModule(GlModuleBase):
    m: int
    n: int
    weights: list
    parities: list
    action: dict
    top: tuple = None
    name: str = ""

    def __post_init__(self):
        self.weights = [tuple(Fraction(c) for c in w) for w in self.weights]
        self.parities = [int(p) % 2 for p in self.parities]
        if len(self.weights) != len(self.parities):
            raise ValueError("weights and parities differ in length")

    @property
    def dim(self):
        return len(self.weights)

    def labels(self):
        return list(range(self.dim))

    def gl_weight(self, lab):
        return self.weights[lab]

    def parity_of(self, lab):
        return self.parities[lab]

    def act_unit(self, u, lab):
        return self.action.get(u, {}).get(lab, {})

    def labels_of_hweight(self, nu):
        nu = tuple(Fraction(c) for c in nu)
        return [k for k in range(self.dim) if self.hweight(k) == nu]

    def check_brackets(self):
        return self.bracket_failures(self.labels())

    def check_weights(self):
        for k in range(self.dim):
            for i in range(1, self.m + self.n + 1):
                v = self.act_unit((i, i), k)
                expect = {k: self.weights[k][i - 1]} if self.weights[k][i - 1] else {}
                if _clean(v) != expect:
                    return False
        return True

    def flip(self):
        return FinDimModule(
            self.m, self.n, list(self.weights), [1 - p for p in self.parities], self.action, self.top, f"Pi({self.name})"
        )

    def matrix(self, u):
        return self.action.get(u, {})


def _assemble(m, n, labels, weight_of, parity_of, act, name="", top=None):
    index = {lab: k for k, lab in enumerate(labels)}
    action = {}
    for u in gl_units(m, n):
        cols = {}
        for lab in labels:
            img = act(u, lab)
            col = {}
            for lab2, c in img.items():
                if c:
                    if lab2 not in index:
                        raise NotMaterializable(f"{lab2} escapes the basis under {u}")
                    col[index[lab2]] = col.get(index[lab2], 0) + c
            col = _clean(col)
            if col:
                cols[index[lab]] = col
        if cols:
            action[u] = cols
    return FinDimModule(m, n, [weight_of(l) for l in labels], [parity_of(l) for l in labels], action, top, name)


# -- small constructors ------------------------------------------------------------


def trivial_module(m, n):
    return FinDimModule(m, n, [(0,) * (m + n)], [0], {}, (0,), "trivial")


def str_module(m, n):
    """``Str_{m,n}``: one dimension, ``x·1 = str(x)``."""
    w = (1,) * m + (-1,) * n
    action = {(i, i): {0: {0: Fraction(w[i - 1])}} for i in range(1, m + n + 1)}
    return FinDimModule(m, n, [w], [0], action, (0,), "Str")


def gl0_character(m, n, lam):
    """One-dimensional gl^0 module ``E_ii ↦ lam_i`` (off-diagonal entries act by 0)."""
    lam = tuple(Fraction(c) for c in lam)
    action = {(i, i): {0: {0: lam[i - 1]}} for i in range(1, m + n + 1) if lam[i - 1]}
    mod = FinDimModule(m, n, [lam], [0], action, (0,), f"char{tuple(str(c) for c in lam)}")
    if mod.bracket_failures(mod.labels(), gl0_units(m, n)):
        raise GradationError(f"{lam} is not a character of gl^0")
    return mod


def gl0_module(m, n, weights, blocks):
    """A gl^0 module with diagonal action ``weights`` and extra even matrices ``blocks``."""
    weights = [tuple(Fraction(c) for c in w) for w in weights]
    action = {}
    for i in range(1, m + n + 1):
        col = {k: {k: w[i - 1]} for k, w in enumerate(weights) if w[i - 1]}
        if col:
            action[(i, i)] = col
    for u, mat in blocks.items():
        action[u] = mat
    return FinDimModule(m, n, weights, [0] * len(weights), action, tuple(range(len(weights))), "gl0")


# -- Kac modules ----------------------------------------------------------------------


def _leftmul(f, S, order):
    """``f · f_S`` in the exterior algebra on gl^{-1}: (sign, new S) or (0, None)."""
    if f in S:
        return 0, None
    pos = order[f]
    sign = (-1) ** sum(1 for s in S if order[s] < pos)
    return sign, tuple(sorted(S + (f,), key=order.get))


def kac_module(V):
    """``K(V) = Ind_{gl^0 ⊕ gl^1}^{gl} V`` realised on ``Λ(gl^{-1}) ⊗ V``.

    Basis labels are ``(S, v)`` with ``S`` an ordered tuple of gl^{-1} units,
    standing for ``f_{s_1} ... f_{s_k} v``.
    """
    m, n = V.m, V.n
    for u, mat in V.action.items():
        if zdegree(u, m) and any(_clean(col) for col in mat.values()):
            raise GradationError(f"V has nonzero action of {u} outside gl^0")
    if any(V.parities):
        raise GradationError("V must be purely even")
    minus = [(m + j, i) for j in range(1, n + 1) for i in range(1, m + 1)]
    order = {f: k for k, f in enumerate(minus)}

    @lru_cache(maxsize=None)
    def act(u, S, v):
        out = {}
        if not S:
            d = zdegree(u, m)
            if d == -1:
                out[((u,), v)] = Fraction(1)
            elif d == 0:
                for w, c in V.act_unit(u, v).items():
                    out[((), w)] = out.get(((), w), 0) + c
            return tuple(_clean(out).items())
        f, rest = S[0], S[1:]
        for z, c in gl_bracket_units(u, f, m).items():
            for key, e in act(z, rest, v):
                out[key] = out.get(key, 0) + c * e
        sgn = -1 if gl_parity(*u, m) else 1
        for (S2, w), e in act(u, rest, v):
            s, S3 = _leftmul(f, S2, order)
            if s:
                out[(S3, w)] = out.get((S3, w), 0) + sgn * s * e
        return tuple(_clean(out).items())

    labels = []
    for k in range(len(minus) + 1):
        for S in combinations(minus, k):
            for v in range(V.dim):
                labels.append((S, v))

    def weight_of(lab):
        S, v = lab
        w = list(V.weights[v])
        for a, b in S:
            w[a - 1] += 1
            w[b - 1] -= 1
        return tuple(w)

    def parity_of(lab):
        return len(lab[0]) % 2

    top = tuple(k for k, lab in enumerate(labels) if not lab[0])
    mod = _assemble(m, n, labels, weight_of, parity_of, lambda u, lab: dict(act(u, *lab)), f"K({V.name})", top)
    mod.kac_labels = labels
    return mod


def radical(K):
    """Largest submodule of ``K`` with zero component on the generating copy ``K.top``.

    Exact: start from all vectors vanishing on ``top`` and repeatedly keep the
    vectors whose images under every unit stay inside. Returns an RREF basis.
    """
    if K.top is None:
        raise NotAKacModule("module carries no generating top")
    top = set(K.top)
    R = [{k: Fraction(1)} for k in range(K.dim) if k not in top]
    units = gl_units(K.m, K.n)
    while True:
        basis = row_basis(R)
        if not basis:
            return []
        cols = []
        for piv, row in basis:
            col = {}
            for u in units:
                img = reduce_against(basis, K.act_unit_vec(u, row))
                for k, c in img.items():
                    col[(u, k)] = c
            cols.append(col)
        ker = kernel(cols, len(basis))
        new = []
        for vec in ker:
            v = {}
            for idx, c in vec.items():
                add_into(v, basis[idx][1], c)
            new.append(v)
        if rank(new) == len(basis):
            return basis
        R = new


def quotient_module(K, basis, name=""):
    """``K / span(basis)`` with ``basis`` in RREF (as from :func:`radical`)."""
    pivots = {p for p, _ in basis}
    keep = [k for k in range(K.dim) if k not in pivots]
    pos = {k: i for i, k in enumerate(keep)}
    action = {}
    for u in gl_units(K.m, K.n):
        cols = {}
        for k in keep:
            img = reduce_against(basis, K.act_unit(u, k))
            col = {pos[r]: c for r, c in img.items() if c}
            if col:
                cols[pos[k]] = col
        if cols:
            action[u] = cols
    top = tuple(pos[k] for k in (K.top or ()) if k in pos)
    return FinDimModule(K.m, K.n, [K.weights[k] for k in keep], [K.parities[k] for k in keep], action, top, name)


def simple_top(K):
    """``L(V) = K(V) / rad``."""
    return quotient_module(K, radical(K), f"L({K.name})")


def generated_submodule(K, v):
    """RREF basis of ``U(gl)·v``."""
    units = gl_units(K.m, K.n)
    vecs = [_clean(v)]
    basis = row_basis(vecs)
    queue = [vecs[0]]
    while queue:
        w = queue.pop()
        for u in units:
            img = K.act_unit_vec(u, w)
            if reduce_against(basis, img):
                vecs.append(img)
                basis = row_basis(vecs)
                queue.append(img)
    return basis


def radical_by_sweep(K):
    """Oracle for :func:`radical`: sum of the submodules generated by weight
    vectors (basis vectors and pairwise sums inside each weight space) that
    avoid the generating copy. Also returns whether some weight space exceeds
    dimension 3, where the sweep is not guaranteed to be exhaustive."""
    top = set(K.top)
    spaces = {}
    for k in range(K.dim):
        spaces.setdefault(K.weights[k], []).append(k)
    kept = []
    big = any(len(s) > 3 for s in spaces.values())
    for ks in spaces.values():
        cands = [{k: Fraction(1)} for k in ks]
        cands += [{a: Fraction(1), b: Fraction(1)} for a, b in combinations(ks, 2)]
        for v in cands:
            sub = generated_submodule(K, v)
            if all(not (set(row) & top) for _, row in sub):
                kept.extend(row for _, row in sub)
    return row_basis(kept), big


def is_simple(K):
    """No proper nonzero submodule: every nonzero weight vector generates everything
    (checked on basis vectors and pairwise sums within weight spaces)."""
    spaces = {}
    for k in range(K.dim):
        spaces.setdefault(K.weights[k], []).append(k)
    for ks in spaces.values():
        cands = [{k: Fraction(1)} for k in ks]
        cands += [{a: Fraction(1), b: Fraction(1)} for a, b in combinations(ks, 2)]
        cands += [{a: Fraction(1), b: Fraction(-1)} for a, b in combinations(ks, 2)]
        for v in cands:
            if len(generated_submodule(K, v)) < K.dim:
                return False
    return True


# -- modules cut out of Weyl-algebra descriptors --------------------------------------


def fundamental_index_map(m, n):
    """gl_{m,n} → K_{n,m}, ``E_ab ↦ t'_a ∂'_b`` with ``(t'_1..t'_{m+n}) = (ξ_1..ξ_m, t_1..t_n)``.

    Returns the K_{n,m} unified index of ``t'_a``.
    """
    return tuple([n + a for a in range(1, m + 1)] + [j for j in range(1, n + 1)])


class DescriptorGlModule(GlModuleBase):
    """The ``E = Σ E_ii`` eigenspace of a descriptor module, viewed over gl_{m,n}
    through ``E_ab ↦ t'_{idx(a)} ∂'_{idx(b)}``."""

    def __init__(self, desc, m, n, level, index_map=None, name=None):
        self.desc = desc
        self.m, self.n = m, n
        self.level = Fraction(level)
        self.index_map = fundamental_index_map(m, n) if index_map is None else tuple(index_map)
        if sorted(self.index_map) != list(range(1, desc.m + desc.n + 1)):
            raise SignatureMismatch("index map must be a bijection onto the Weyl generators")
        flips = {(self.index_map[a - 1] > desc.m) != (a > m) for a in range(1, m + n + 1)}
        if len(flips) > 1:
            raise SignatureMismatch("index map does not respect the parity of gl")
        self.K = weyl_algebra(desc.m, desc.n)
        self.name = name or f"{desc}[{self.level}]"
        self._ops = {}

    def _op(self, u):
        hit = self._ops.get(u)
        if hit is None:
            a, b = u
            hit = self.K.t(self.index_map[a - 1]) * self.K.d(self.index_map[b - 1])
            self._ops[u] = hit
        return hit

    def act_unit(self, u, lab):
        return self.desc.act(self._op(u), {lab: Fraction(1)})

    def parity_of(self, lab):
        return self.desc.vector_parity(lab)

    def _coord(self, lab, p):
        exps, odd = lab
        if p <= self.desc.m:
            return Fraction(exps[p - 1])
        return Fraction(int(p - self.desc.m in odd))

    def gl_weight(self, lab):
        return tuple(self._coord(lab, self.index_map[a - 1]) for a in range(1, self.m + self.n + 1))

    def level_of(self, lab):
        return sum(self.gl_weight(lab))

    # -- enumeration -------------------------------------------------------------

    def _enumerate(self, fixed):
        """Labels at this level whose Weyl coordinates agree with ``fixed`` (index → value)."""
        d = self.desc
        evens = [p for p in range(1, d.m + 1) if p not in fixed]
        odds = [p for p in range(d.m + 1, d.m + d.n + 1) if p not in fixed]
        for p, val in fixed.items():
            if p <= d.m and not d.factors[p - 1].allowed(val):
                return []
            if p > d.m and val not in (0, 1):
                return []
        base = sum(Fraction(v) for v in fixed.values())
        out = []
        for k in range(len(odds) + 1):
            for sub in combinations(odds, k):
                rest = self.level - base - k
                for ev in self._split(evens, rest):
                    exps = [None] * d.m
                    for p, val in fixed.items():
                        if p <= d.m:
                            exps[p - 1] = Fraction(val)
                    for p, val in zip(evens, ev):
                        exps[p - 1] = Fraction(val)
                    oddset = [p - d.m for p in odds if p in sub]
                    oddset += [p - d.m for p, val in fixed.items() if p > d.m and val == 1]
                    out.append((tuple(exps), tuple(sorted(oddset))))
        return out

    def _split(self, evens, total):
        facs = [self.desc.factors[p - 1] for p in evens]
        if not facs:
            return [()] if total == 0 else []
        if len(facs) == 1:
            return [(total,)] if facs[0].allowed(total) else []
        kinds = {f.kind for f in facs}
        if kinds == {"P"}:
            if total.denominator != 1 or total < 0:
                return []
            return list(_compositions(int(total), len(facs)))
        if kinds == {"Q"}:
            s = -total - len(facs)
            if s.denominator != 1 or s < 0:
                return []
            return [tuple(-1 - c for c in comp) for comp in _compositions(int(s), len(facs))]
        raise NotMaterializable(f"level {self.level} of {self.desc} is infinite-dimensional")

    def is_finite(self):
        try:
            self._enumerate({})
            return True
        except NotMaterializable:
            return False

    def labels(self):
        return sorted(self._enumerate({}), key=_label_key)

    def labels_of_hweight(self, nu):
        fixed = {self.index_map[a]: Fraction(nu[a]) for a in range(self.m)}
        return sorted(self._enumerate(fixed), key=_label_key)

    def materialize(self):
        labels = self.labels()
        mod = _assemble(self.m, self.n, labels, self.gl_weight, self.parity_of, self.act_unit, self.name)
        mod.source_labels = labels
        return mod

    def check_brackets(self, labels=None):
        return self.bracket_failures(self.labels() if labels is None else labels)


def _label_key(lab):
    return (tuple(lab[0]), lab[1])


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def fundamental_module(desc, level, m, n):
    """``P'[level]`` for a K_{n,m} descriptor ``desc``.

    Returns a :class:`FinDimModule` when the level set is finite and the
    symbolic :class:`DescriptorGlModule` otherwise.
    """
    if (desc.m, desc.n) != (n, m):
        raise SignatureMismatch(f"fundamental modules of gl({m},{n}) come from K({n},{m}) descriptors")
    mod = DescriptorGlModule(desc, m, n, level)
    return mod.materialize() if mod.is_finite() else mod


def str_level(m, n):
    """Level of ``Str`` inside ``A^σ`` for gl_{m,n}: every ``ξ'`` present, every ``t'`` at ``-1``."""
    return m - n


def is_fundamental_finite(desc, m, n):
    """Finite level sets: ``n <= 1``, or all factors ``Poly``, or all ``Quot``."""
    return n <= 1 or desc.is_A() or desc.is_A_sigma()
