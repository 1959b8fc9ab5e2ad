"""The nine acceptance criteria, each run at its stated parameters.

One PASS/FAIL line per criterion is printed (and repeated in the terminal summary).
"""

import subprocess
import sys
import time
from pathlib import Path

from conftest import ACCEPTANCE
from wittsuper.fixtures import GOLDEN_JOBS
from wittsuper.suites import (
    classify_suite,
    diff_suite,
    geometry_suite,
    hc_suite,
    jacobi_suite,
    omega_bar_suite,
    omega_natural,
    pi_suite,
    reconstruction_suite,
)

ROOT = Path(__file__).resolve().parent.parent


def record(k, ok, note):
    ACCEPTANCE[k] = (ok, note)
    print(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {note}")
    assert ok, note


def timed(fn, *args, **kw):
    t0 = time.perf_counter()
    out = fn(*args, **kw)
    return out, time.perf_counter() - t0


def test_criterion_1_jacobi_w22():
    (ok, body), dt = timed(jacobi_suite, 2, 2, 3)
    good = ok and body["triples"] >= 10_000 and dt < 60
    record(1, good, f"W(2,2) deg<=3: {body['triples']} triples, {body['pairs']} pairs, {dt:.1f}s")


def test_criterion_2_pi_homomorphism():
    notes, good = [], True
    for m, n in ((1, 1), (2, 1), (1, 2)):
        (ok, body), dt = timed(pi_suite, m, n, 3)
        good &= ok and dt < 60
        notes.append(f"({m},{n}) {body['basis_size']} fields {dt:.1f}s{'' if ok else ' FAIL'}")
    record(2, good, "; ".join(notes))


def test_criterion_3_diff():
    ok, body = diff_suite(3)
    rows = body["fixtures"]
    good = ok and rows and all(0 < r["window_dim"] <= 2000 and r["squares_to_zero"] and r["commutes"] for r in rows)
    record(3, good, f"{len(rows)} windows, dims {[r['window_dim'] for r in rows]}, fields of degree <=3")


def test_criterion_4_omega():
    ok1, nat = omega_natural(max_k=8, r=2)
    ok2, bar = omega_bar_suite()
    found = [f for f in bar["fixtures"] if f["r0"] is not None and f["window_dim"] > 0]
    good = ok1 and ok2 and len(nat["rows"]) == 9 and len(found) >= 3
    r0s = ", ".join(f"{f['name']}: r0={f['r0']}" for f in bar["fixtures"])
    record(4, good, f"omega kills C[t] deg<=8: {ok1}; {r0s}")


def test_criterion_5_reconstruction():
    notes, good = [], True
    for q, n in ((1, 1), (2, 1)):
        ok, body = reconstruction_suite(q, n, max_alpha=3, closure_alpha=2)
        good &= ok
        notes.append(f"(q,n)=({q},{n}) {body['identity_checks']} checks, closure={body['closure']}")
    record(5, good, "; ".join(notes))


def test_criterion_6_geometry():
    ok, body = geometry_suite()
    good = ok and body["realizable_fixtures"] >= 6
    record(6, good, f"{body['realizable_fixtures']} realizable cone fixtures of {len(body['fixtures'])}")


def test_criterion_7_classification():
    ok, body = classify_suite()
    rows = body["fixtures"]
    case_ii = [r for r in rows if r["case"] == "ii"]
    diff_ok = all(r["evidence"]["proper"] and r["evidence"]["nonzero"] and r["evidence"]["invariant"] for r in case_ii)
    good = ok and len(rows) >= 9 and case_ii and diff_ok
    record(7, good, f"{len(rows)} fixtures, cases {body['cases']}, rules {body['rules']}, {len(case_ii)} diff images checked")


def test_criterion_8_hc():
    ok, body = hc_suite(radii=(2, 4, 6))
    rows = body["fixtures"]
    true_rows = [r for r in rows if r["expected"]]
    false_rows = [r for r in rows if not r["expected"]]
    good = ok and true_rows and false_rows
    growth = [t["dims"] for r in false_rows for t in r["tracks"]]
    record(8, good, f"{len(true_rows)} bounded, {len(false_rows)} growing; growth {growth}")


def _run(args, out):
    proc = subprocess.run([sys.executable, "-m", "wittsuper", *args, "--out", str(out)], cwd=ROOT, capture_output=True, text=True)
    return proc.returncode, out.read_bytes() if out.exists() else b""


def test_criterion_9_cli_golden(tmp_path):
    mismatched = []
    for name, args in GOLDEN_JOBS.items():
        code1, first = _run(args, tmp_path / f"{name}.1.json")
        code2, second = _run(args, tmp_path / f"{name}.2.json")
        golden = (ROOT / "tests" / "golden" / f"{name}.json").read_bytes()
        if not (code1 == code2 == 0 and first == second == golden):
            mismatched.append(name)
    good = len(GOLDEN_JOBS) >= 5 and not mismatched
    record(9, good, f"{len(GOLDEN_JOBS)} jobs byte-identical across runs and against golden files; mismatched {mismatched}")
