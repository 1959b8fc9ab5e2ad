"""Verification suites. Each returns ``(ok, body)`` with a JSON-ready body."""

import time
from fractions import Fraction
from itertools import combinations
from math import comb

from .classify import (
    certify_nonfundamental,
    hc_condition,
    level_module,
    level_shadow,
    level_support,
    main_theorem_classify,
    product_bound,
    window_weight_dim,
)
from .core import basis_fields, bracket_w
from .descriptors import ModuleDescriptor, parse_descriptor
from .enveloping import (
    build_omega,
    build_X,
    build_Y,
    check_identity,
    check_t_homomorphism,
    enveloping_w,
    normal_order,
    reconstruct,
    t_generators,
    t_subalgebra_closure,
    ubar,
)
from .errors import SpanSolveFailure
from .fixtures import (
    CLASSIFY_BATTERY,
    CONE_FIXTURES,
    DIFF_FIXTURES,
    HC_FIXTURES,
    OMEGA_BAR_FIXTURES,
)
from .geometry import (
    check_closure_lemmas,
    check_parabolic,
    deltazero_check,
    extremal_weights,
    format_root,
    parabolic_decomposition,
    shadow,
)
from .glreps import trivial_module
from .serialize import fmt_weight, parse_gl_tag, parse_k_tag
from .tensor import (
    LeviTensorModule,
    PiSecond,
    TensorModule,
    WindowModule,
    check_diff,
    omega_bar_r0,
    pi_homomorphism_failures,
    window_box,
)


def _sign(x, y):
    return -1 if (x.parity() and y.parity()) else 1


# -- core algebra ---------------------------------------------------------------------


def jacobi_suite(m, n, deg):
    """Super-Jacobi on ordered basis triples and super-antisymmetry on pairs, total degree ≤ deg."""
    B = basis_fields(m, n, deg)
    memo = {}

    def br(x, y):
        k = (x, y)
        if k not in memo:
            memo[k] = bracket_w(x, y)
        return memo[k]

    pairs = triples = 0
    anti_fail, jac_fail = [], []
    for x in B:
        for y in B:
            if x.degree() + y.degree() > deg:
                continue
            pairs += 1
            if br(x, y) != br(y, x) * (-_sign(x, y)):
                anti_fail.append([str(x), str(y)])
            for z in B:
                if x.degree() + y.degree() + z.degree() > deg:
                    continue
                triples += 1
                lhs = bracket_w(br(x, y), z)
                rhs = bracket_w(x, br(y, z)) - bracket_w(y, br(x, z)) * _sign(x, y)
                if lhs != rhs:
                    jac_fail.append([str(x), str(y), str(z)])
    ok = not anti_fail and not jac_fail
    return ok, {
        "basis_size": len(B),
        "pairs": pairs,
        "triples": triples,
        "antisymmetry_failures": anti_fail[:10],
        "jacobi_failures": jac_fail[:10],
    }


# -- π maps ------------------------------------------------------------------------------


def pi_suite(m, n, deg):
    fails = pi_homomorphism_failures(m, n, deg)
    B = basis_fields(m, n, deg)
    return not fails, {
        "basis_size": len(B),
        "pairs": len(B) * (len(B) + 1) // 2,
        "failures": [[str(x), str(y)] for x, y in fails[:10]],
    }


def levi_letters(alg, deg):
    """Generators of k^ ⊕ A with ``|alpha| + |I| <= deg`` (the unit of A excluded)."""
    out = []
    q, n = alg.q, alg.n
    dirs = alg.spec.directions()
    for total in range(deg + 1):
        for k in range(min(n, total) + 1):
            for I in combinations(range(1, n + 1), k):
                for alpha in _rows(total - k, q):
                    if total:
                        out.append(alg.a_letter(alpha, I))
                    out += [alg.w_letter(alpha, I, d) for d in dirs]
                    out += [alg.k_letter(x, alpha, I) for x in alg.spec.k_basis()]
    return out


def _rows(total, q):
    if q == 0:
        if total == 0:
            yield ()
        return
    for first in range(total, -1, -1):
        for rest in _rows(total - first, q - 1):
            yield (first,) + rest


def pi2_suite(q, n, m, blocks, deg):
    alg = ubar(q, n, m=m, blocks=blocks)
    ps = PiSecond(alg)
    letters = levi_letters(alg, deg)
    fails = ps.failures(letters)
    return not fails, {
        "letters": len(letters),
        "failures": [[alg.format_key((y,)), alg.format_key((z,))] for y, z in fails[:10]],
    }


# -- diff --------------------------------------------------------------------------------------


def diff_suite(deg=3, names=None):
    rows, ok = [], True
    for name, m, n, Ps, Pps, level, radius in DIFF_FIXTURES:
        if names and name not in names:
            continue
        P = parse_descriptor(Ps, m, n)
        Pp = parse_descriptor(Pps, n, m)
        rep = check_diff(P, Pp, level, window_box(m, radius), deg)
        good = rep.squares_to_zero and rep.commutes and rep.window_dim > 0
        ok &= good
        row = {"name": name, "m": m, "n": n, "P": Ps, "P_prime": Pps, "level": level, "ok": good}
        row.update(rep.as_dict())
        rows.append(row)
    return ok, {"fixtures": rows, "degree": deg}


# -- ω and ω̄ ----------------------------------------------------------------------------------


def omega_natural(max_k=8, r=2):
    """``ω`` (α=β=0, I=J=∅, j=1, ∂=∂'=∂_1) on ``C[t]`` for exponents ``0..max_k``.

    Module route: act on ``F(A_{1,0}, trivial) ≅ C[t]``. Expansion route:
    ``ω·t^k = k Σ_i (-1)^i C(r,i) (k+i-1) t^k``.
    """
    alg = enveloping_w(1, 0)
    w = build_omega(alg, (0,), (0,), (), (), r, 1, 1, 1)
    F = TensorModule(ModuleDescriptor.A(1, 0), trivial_module(1, 0))
    window = WindowModule(F, ((0, max_k),))
    rows, ok = [], True
    for lab in window.basis():
        k = lab[0][0][0]
        out = F.act_env(w, {lab: Fraction(1)})
        expansion = k * sum((-1) ** i * comb(r, i) * (k + i - 1) for i in range(r + 1))
        module_coeff = sum(out.values(), Fraction(0))
        good = not out and expansion == 0 and module_coeff == expansion
        ok &= good
        rows.append({"k": k, "module": module_coeff, "expansion": expansion, "annihilated": not out})
    return ok, {"r": r, "terms": len(w.terms), "rows": rows}


def omega_bar_suite(radius=2, exps=2, r_max=6):
    alg = ubar(1, 1, m=2, blocks=[(2,)])
    rows, ok = [], True
    for name, Ps, Ms, Ss in OMEGA_BAR_FIXTURES:
        P = parse_descriptor(Ps, 1, 1)
        M = parse_gl_tag(Ms, 1, 1).module
        S = parse_k_tag(Ss, alg.spec)
        r0, table, dim = omega_bar_r0(alg, P, M, S, window_box(1, radius), (2, 2), 1, exps, r_max)
        good = r0 is not None and dim > 0
        ok &= good
        rows.append(
            {"name": name, "P": Ps, "M": Ms, "S": Ss, "r0": r0, "window_dim": dim, "table": {str(k): v for k, v in table.items()}}
        )
    return ok, {"fixtures": rows, "exponent_cap": exps, "window_radius": radius}


def omega_suite():
    ok1, nat = omega_natural()
    ok2, bar = omega_bar_suite()
    return ok1 and ok2, {"natural": nat, "bar": bar}


# -- reconstruction ----------------------------------------------------------------------------


def _levi_fixture(q, n):
    """Levi data with one gl_1 block after the free indices."""
    return ubar(q, n, m=q + 1, blocks=[(q + 1,)])


def reconstruction_suite(q, n, max_alpha=3, closure_alpha=2):
    alg = _levi_fixture(q, n)
    x = alg.spec.k_basis()[0]
    dirs = alg.spec.directions()
    checks = fails = 0
    failures = []
    subsets = [I for k in range(n + 1) for I in combinations(range(1, n + 1), k)]
    for total in range(max_alpha + 1):
        for alpha in _rows(total, q):
            for I in subsets:
                for d in dirs:
                    rep = check_identity(alg.w(alpha, I, d), reconstruct(alg, alpha, I, d=d), "X-form", {})
                    checks += 1
                    if not rep.verdict:
                        fails += 1
                        failures.append(["X", list(alpha), list(I), d])
                rep = check_identity(alg.k(x, alpha, I), reconstruct(alg, alpha, I, x=x), "Y-form", {})
                checks += 1
                if not rep.verdict:
                    fails += 1
                    failures.append(["Y", list(alpha), list(I)])
                # commutant laws
                # T is spanned by X with |alpha|+|I| > 0 and every Y
                Xs = [build_Y(alg, alpha, I, x)]
                if total or I:
                    Xs += [build_X(alg, alpha, I, d) for d in dirs]
                gens = [alg.a(_unit(q, j)) for j in range(1, q + 1)] + [alg.a((0,) * q, (j,)) for j in range(1, n + 1)]
                gens += [alg.partial(d) for d in dirs]
                for T in Xs:
                    for g in gens:
                        checks += 1
                        if normal_order(T.bracket(g)):
                            fails += 1
                            failures.append(["commutant", list(alpha), list(I)])
    gens = t_generators(alg, closure_alpha)
    sample = {k: v for k, v in gens.items() if sum(k[1]) <= closure_alpha}
    span = t_generators(alg, 2 * closure_alpha)
    try:
        t_subalgebra_closure(sample, span)
        closure = True
    except SpanSolveFailure:
        closure = False
    hom = check_t_homomorphism(alg, closure_alpha)
    ok = fails == 0 and closure and not hom
    return ok, {
        "q": q,
        "n": n,
        "levi_blocks": [list(b) for b in alg.spec.blocks],
        "identity_checks": checks,
        "failures": failures[:10],
        "closure_pairs": len(sample) * (len(sample) + 1) // 2,
        "closure": closure,
        "t_homomorphism_failures": len(hom),
    }


def _unit(q, j):
    return tuple(int(k == j) for k in range(1, q + 1))


# -- weight geometry ---------------------------------------------------------------------------


def geometry_suite(names=None, radius=1, max_extremal=3):
    rows, ok = [], True
    for name, (S, note) in CONE_FIXTURES.items():
        if names and name not in names:
            continue
        anchor = S.anchor()
        sp = shadow(S, anchor)
        pts = S.points(anchor, 2)[:5]
        independent = all(shadow(S, p).key() == sp.key() for p in pts)
        flags = sp.flags()
        realizable = not flags
        row = {
            "name": name,
            "note": note,
            "shadow": sp.as_dict(),
            "base_point_independent": independent,
            "flags": flags,
        }
        if realizable:
            finite_in_dd = all(sum(a) == 0 for a in sp.finite)
            certify = 6 if S.dim <= 2 else 4
            ext = extremal_weights(S, radius, certify)[:max_extremal]
            closures, parabolic, kformula, dz = [], [], [], []
            for lam in ext:
                rep = check_closure_lemmas(S, lam, sp=sp)
                closures.append(not rep.closure_k and not rep.closure_kbar and rep.corollary_match)
                kformula.append(rep.k_formula)
                pd = parabolic_decomposition(sp, lam)
                parabolic.append(check_parabolic(pd, S.dim))
                dz.append(deltazero_check(sp, lam))
            good = independent and finite_in_dd and all(closures) and all(parabolic) and all(kformula) and all(dz) and bool(ext)
            row.update(
                {
                    "finite_in_double_prime": finite_in_dd,
                    "extremal_weights": [fmt_weight(w) for w in ext],
                    "extremal_certificate_radius": certify,
                    "closure_laws": all(closures),
                    "parabolic_triangular": all(parabolic),
                    "k_lambda_formula": all(kformula),
                    "deltazero": all(dz),
                }
            )
        else:
            good = independent
        row["ok"] = good
        ok &= good
        rows.append(row)
    realizable = sum(1 for r in rows if not r["flags"])
    return ok and realizable >= 6, {"fixtures": rows, "realizable_fixtures": realizable}


# -- classification ----------------------------------------------------------------------------


def classify_fixture(name, m, n, Ps, Ms, radius=1, degree=2):
    P = parse_descriptor(Ps, m, n)
    M = parse_gl_tag(Ms, m, n)
    return main_theorem_classify(P, M, radius=radius, degree=degree)


def classify_suite(radius=1, degree=2):
    rows, ok = [], True
    cases, rules = set(), set()
    for name, m, n, Ps, Ms, case, rule in CLASSIFY_BATTERY:
        v = classify_fixture(name, m, n, Ps, Ms, radius, degree)
        good = v.case == case and v.lemma.rule == rule and v.ok
        ok &= good
        cases.add(v.case)
        rules.update(v.lemma.rule.split("+"))
        row = {"name": name, "m": m, "n": n, "expected_case": case, "expected_rule": rule, "ok": good}
        row.update(v.as_dict())
        rows.append(row)
    covered = cases >= {"i", "ii", "iii"} and rules >= {"1", "2a", "2c", "2d", "2e"}
    return ok and covered and len(rows) >= 9, {
        "fixtures": rows,
        "cases": sorted(cases),
        "rules": sorted(rules),
    }


def hc_suite(radii=(2, 4, 6)):
    rows, ok = [], True
    for name, Ps, Vs, level, expected in HC_FIXTURES:
        P1 = parse_descriptor(Ps, 2, 0)
        Vd = parse_descriptor(Vs, 2, 0)
        rep = hc_condition(P1, level_shadow(Vd, level), report=True)
        V = level_module(Vd, level)
        anchor = level_support(Vd, level).anchor()
        gammas = [tuple(a + b for a, b in zip(P1.origin(), anchor))]
        gammas.append(tuple(g + d for g, d in zip(gammas[0], (1, 0))))
        tracks = []
        for gamma in gammas:
            dims = [window_weight_dim(P1, V, gamma, R) for R in radii]
            bound = product_bound(P1, Vd, level, gamma)
            if rep.verdict:
                good = all(d <= bound for d in dims) and dims[-1] == bound
            else:
                good = bound == float("inf") and all(a < b for a, b in zip(dims, dims[1:]))
            tracks.append({"gamma": fmt_weight(gamma), "dims": dims, "bound": bound, "ok": good})
        good = rep.verdict == expected and all(t["ok"] for t in tracks)
        ok &= good
        rows.append(
            {
                "name": name,
                "P1": Ps,
                "V1": f"{Vs}[{level}]",
                "expected": expected,
                "condition": rep.as_dict(),
                "tracks": tracks,
                "radii": list(radii),
                "ok": good,
            }
        )
    verdicts = {r["condition"]["verdict"] for r in rows}
    return ok and verdicts == {True, False}, {"fixtures": rows}


SUITES = {
    "jacobi": "super-Jacobi and super-antisymmetry on W_{m,n} basis triples",
    "pi": "π : W → K ⊗ U(gl) is a homomorphism on basis pairs",
    "pi2": "Levi π : k^ ⊕ A → K ⊗ U(gl) ⊗ U(k) is a homomorphism on generators",
    "diff": "diff² = 0 and diff commutes with π(x) on windows",
    "omega": "ω kills C[t]; ω̄ kills 𝓕(F(P,M),S) windows from r0 on",
    "reconstruction": "X/Y reconstruction identities, commutant laws, T closure",
    "geometry": "shadow, closure-law and parabolic checks on cone fixtures",
    "classify": "classification battery against the decision table",
    "hc": "Δ'' condition versus window weight-space growth",
}


def run_suite(name, m=1, n=1, q=1, deg=3):
    t0 = time.perf_counter()
    if name == "jacobi":
        ok, body = jacobi_suite(m, n, deg)
    elif name == "pi":
        ok, body = pi_suite(m, n, deg)
    elif name == "pi2":
        ok, body = pi2_suite(q, n, q + 1, [(q + 1,)], deg)
    elif name == "diff":
        ok, body = diff_suite(deg)
    elif name == "omega":
        ok, body = omega_suite()
    elif name == "reconstruction":
        ok, body = reconstruction_suite(q, n)
    elif name == "geometry":
        ok, body = geometry_suite()
    elif name == "classify":
        ok, body = classify_suite()
    elif name == "hc":
        ok, body = hc_suite()
    else:
        raise KeyError(name)
    return ok, body, time.perf_counter() - t0
