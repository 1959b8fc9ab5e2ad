"""Command-line front end.

Exit codes: 0 all checks pass, 1 a check came out false, 2 usage error or an
undecided computation. A short human summary goes to standard output; the full
evidence (JSON, sorted keys, no timings) goes to ``--out``.
"""

import argparse
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from .errors import WittError
from .serialize import (
    dump_report,
    fmt_weight,
    load_support,
    parse_descriptor,
    parse_gl_tag,
    parse_k_tag,
    parse_window,
    support_to_json,
)

COMMANDS = ("verify", "bracket", "shadow", "parabolic", "levi", "classify", "omega")


class UsageError(Exception):
    pass


def build_parser():
    p = argparse.ArgumentParser(prog="wittsuper", description="Exact computations with W(m,n) and its weight modules.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--m", type=int, default=None, help="number of even variables")
    p.add_argument("--n", type=int, default=None, help="number of odd variables")
    p.add_argument("--q", type=int, default=None, help="free even directions of the Levi subalgebra")
    p.add_argument("--deg", type=int, default=None, help="degree cap")
    p.add_argument("--window", default=None, help="radius R or intervals lo:hi,lo:hi,...")
    p.add_argument("--support", default=None, help="support-set JSON file")
    p.add_argument("--P", default=None, help="K-module descriptor, e.g. A, PiA, Asigma, L1/2,P,Q")
    p.add_argument("--M", default=None, help="gl-module tag: trivial, pitrivial, str, pistr, fund:<P'>:<level>, kac:<weights>")
    p.add_argument("--S", default=None, help="Levi-factor module tag: trivial, scalar:<c>, natural:<block>")
    p.add_argument("--suite", default=None, help="comma-separated suite names (see docs/formats.md)")
    p.add_argument("--out", default=None, help="report file")
    p.add_argument("--jobs", type=int, default=1, help="parallel workers across independent suite items")
    return p


def _positive(name, value):
    if value is not None and value < 0:
        raise UsageError(f"--{name} must be non-negative")
    return value


# -- commands -------------------------------------------------------------------------


def _suite_item(item):
    from .suites import run_suite

    name, kw = item
    ok, body, _ = run_suite(name, **kw)
    return name, ok, body


def cmd_verify(a):
    from .suites import SUITES

    if not a.suite:
        raise UsageError("verify needs --suite")
    names = [s.strip() for s in a.suite.split(",") if s.strip()]
    for s in names:
        if s not in SUITES:
            raise UsageError(f"unknown suite {s!r}; choose from {', '.join(sorted(SUITES))}")
    kw = {"m": a.m if a.m is not None else 1, "n": a.n if a.n is not None else 1, "q": a.q if a.q is not None else 1}
    kw["deg"] = a.deg if a.deg is not None else 3
    if kw["deg"] <= 0:
        raise UsageError("--deg must be positive")
    items = [(s, kw) for s in names]
    if a.jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=a.jobs) as ex:
            results = list(ex.map(_suite_item, items))
    else:
        results = [_suite_item(it) for it in items]
    body = {name: {"ok": ok, "invariant": SUITES[name], "detail": detail} for name, ok, detail in results}
    params = {"suite": names, **kw}
    return all(ok for _, ok, _ in results), params, body


def cmd_bracket(a):
    from .core import basis_fields, bracket_w

    m, n = a.m if a.m is not None else 1, a.n if a.n is not None else 1
    deg = a.deg if a.deg is not None else 2
    B = basis_fields(m, n, deg)
    table = []
    anti_ok = True
    for i, x in enumerate(B):
        for y in B[i:]:
            if x.degree() + y.degree() > deg:
                continue
            b = bracket_w(x, y)
            sign = -1 if (x.parity() and y.parity()) else 1
            anti_ok &= bracket_w(y, x) == b * (-sign)
            if b.terms:
                table.append({"x": str(x), "y": str(y), "bracket": str(b)})
    return anti_ok, {"m": m, "n": n, "deg": deg}, {"basis_size": len(B), "nonzero": len(table), "table": table}


def _support(a):
    if not a.support:
        raise UsageError("this command needs --support")
    try:
        return load_support(a.support)
    except FileNotFoundError as exc:
        raise UsageError(f"support file not found: {a.support}") from exc
    except (ValueError, KeyError) as exc:
        raise UsageError(f"support file {a.support}: {exc}") from exc


def cmd_shadow(a):
    from .geometry import shadow

    S = _support(a)
    radius = int(a.window) if a.window else 6
    lam = S.anchor()
    sp = shadow(S, lam, radius)
    body = {
        "support": support_to_json(S),
        "base_point": fmt_weight(lam),
        "shadow": sp.as_dict(),
        "gamma": _roots(sp.gamma),
        "flags": sp.flags(),
    }
    return True, {"support": a.support, "radius": radius}, body


def _roots(rs):
    from .geometry import format_root

    return [format_root(r) for r in sorted(rs)]


def cmd_parabolic(a):
    from .geometry import check_closure_lemmas, check_parabolic, extremal_weights, parabolic_decomposition, shadow

    S = _support(a)
    cap = a.deg if a.deg is not None else 3
    sp = shadow(S, S.anchor())
    radius = int(a.window) if a.window else 1
    rows, ok = [], True
    for lam in extremal_weights(S, radius)[:3]:
        pd = parabolic_decomposition(sp, lam, degree_cap=cap)
        tri = check_parabolic(pd, S.dim)
        cl = check_closure_lemmas(S, lam, sp=sp)
        ok &= tri
        rows.append({"weight": fmt_weight(lam), "decomposition": pd.as_dict(), "triangular": tri, "closure": cl.as_dict()})
    return ok, {"support": a.support, "degree_cap": cap, "radius": radius}, {"shadow": sp.as_dict(), "extremal": rows}


def cmd_levi(a):
    from .geometry import levi_shape, shadow

    S = _support(a)
    sp = shadow(S, S.anchor())
    shape = levi_shape(sp)
    n = a.n if a.n is not None else 0
    spec = shape.spec(n)
    body = {
        "shadow": sp.as_dict(),
        "levi": shape.as_dict(),
        "relabel": {str(k): v for k, v in sorted(shape.relabel().items())},
        "spec": {"q": spec.q, "n": spec.n, "m": spec.m, "blocks": [list(b) for b in spec.blocks]},
    }
    return True, {"support": a.support, "n": n}, body


def cmd_classify(a):
    from .classify import f2_simplicity, main_theorem_classify

    if not a.P or not a.M:
        raise UsageError("classify needs --P and --M")
    if a.S:
        q = a.q if a.q is not None else 1
        n = a.n if a.n is not None else 1
        m, nn = q, n
    else:
        m = a.m if a.m is not None else 1
        nn = a.n if a.n is not None else 1
    P = parse_descriptor(a.P, m, nn)
    M = parse_gl_tag(a.M, m, nn)
    window = parse_window(a.window, m) if a.window else 1
    deg = a.deg if a.deg is not None else 2
    v = main_theorem_classify(P, M, radius=window, degree=deg)
    params = {"m": m, "n": nn, "P": a.P, "M": a.M, "window": window if isinstance(window, int) else [list(b) for b in window], "deg": deg}
    body = v.as_dict()
    ok = v.ok
    if a.S:
        from .enveloping import LeviSpec

        spec = LeviSpec(q=m, n=nn, m=m + 1, blocks=((m + 1,),))
        S = parse_k_tag(a.S, spec)
        body = {"F": body, "F2": f2_simplicity(S, v.lemma).as_dict(), "S": a.S}
        params["S"] = a.S
    return ok, params, body


def cmd_omega(a):
    from .suites import omega_suite
    from .tensor import omega_bar_r0, window_box

    if not (a.P or a.M or a.S):
        ok, body = omega_suite()
        return ok, {"fixtures": "default"}, body
    if not (a.P and a.M and a.S):
        raise UsageError("omega needs all of --P, --M and --S (or none for the default fixtures)")
    from .enveloping import ubar

    q = a.q if a.q is not None else 1
    n = a.n if a.n is not None else 1
    alg = ubar(q, n, m=q + 1, blocks=[(q + 1,)])
    P = parse_descriptor(a.P, q, n)
    M = parse_gl_tag(a.M, q, n).module
    S = parse_k_tag(a.S, alg.spec)
    box = parse_window(a.window, q) if a.window else window_box(q, 2)
    x = (q + 1, q + 1)
    r0, table, dim = omega_bar_r0(alg, P, M, S, box, x, 1, a.deg if a.deg is not None else 2)
    body = {"r0": r0, "window_dim": dim, "table": {str(k): v for k, v in table.items()}}
    return r0 is not None, {"q": q, "n": n, "P": a.P, "M": a.M, "S": a.S, "window": [list(b) for b in box]}, body


def _verdict_lines(v):
    out = [f"case {v['case']}: {'simple' if v['case'] == 'i' else 'not simple'} (lemma rule {v['lemma']['rule']})"]
    if v.get("hc_condition") is not None:
        out.append(f"hc_condition: {v['hc_condition']}")
    return out


def summarize(command, body):
    """A few human-readable lines; the JSON report carries everything."""
    if command == "verify":
        return [f"{name}: {'pass' if r['ok'] else 'FAIL'} ({r['invariant']})" for name, r in body.items()]
    if command == "bracket":
        return [f"{body['basis_size']} basis fields, {body['nonzero']} nonzero brackets"]
    if command in ("shadow", "parabolic", "levi"):
        sp = body["shadow"]
        out = [f"{k}: {{{', '.join(sp[k])}}}" for k in ("infinite", "plus", "minus", "finite")]
        if command == "shadow" and body["flags"]:
            out.append(f"flags: {', '.join(body['flags'])}")
        if command == "parabolic":
            out += [f"extremal {r['weight']}: triangular={r['triangular']}" for r in body["extremal"]]
        if command == "levi":
            out.append(f"levi: {body['levi']}")
        return out
    if command == "classify":
        if "F2" in body:
            return _verdict_lines(body["F"]) + [f"F2 simple: {body['F2']['simple']}"]
        return _verdict_lines(body)
    if command == "omega":
        if "r0" in body:
            return [f"r0 = {body['r0']} on a window of dimension {body['window_dim']}"]
        nat = body["natural"]
        out = [f"omega (r={nat['r']}) on C[t] up to degree {len(nat['rows']) - 1}: {all(r['annihilated'] for r in nat['rows'])}"]
        out += [f"omega-bar {f['name']}: r0 = {f['r0']} (window dim {f['window_dim']})" for f in body["bar"]["fixtures"]]
        return out
    return []


HANDLERS = {
    "verify": cmd_verify,
    "bracket": cmd_bracket,
    "shadow": cmd_shadow,
    "parabolic": cmd_parabolic,
    "levi": cmd_levi,
    "classify": cmd_classify,
    "omega": cmd_omega,
}


def main(argv=None):
    parser = build_parser()
    a = parser.parse_args(argv)
    t0 = time.perf_counter()
    try:
        for name in ("m", "n", "q", "deg"):
            _positive(name, getattr(a, name))
        if a.jobs < 1:
            raise UsageError("--jobs must be at least 1")
        ok, params, body = HANDLERS[a.command](a)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except WittError as exc:
        print(f"undecided: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    text = dump_report(a.command, params, body, ok)
    if a.out:
        with open(a.out, "w") as fh:
            fh.write(text)
    status = "PASS" if ok else "FAIL"
    print(f"{a.command}: {status} ({time.perf_counter() - t0:.1f}s)")
    for line in summarize(a.command, body):
        print(f"  {line}")
    if a.out:
        print(f"  report: {a.out}")
    return 0 if ok else 1

def main_exit():
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
