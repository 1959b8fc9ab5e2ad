"""Audit of the sign in π(t^α ξ_I ∂_i) = t^α ξ_I ∂_i ⊗ 1 + Σ_s ± ∂_s(t^α ξ_I) ⊗ E_{s,i}.

Every sign rule (-1)^{L} with L linear mod 2 in the features below is tried as
the sign of the s-th term; a rule survives if π is a homomorphism on all basis
pairs of degree ≤ 2 for several signatures. Survivors are re-checked at degree 3.

    python3 scripts/pi_sign_audit.py
"""

import argparse
import time
from itertools import product

from wittsuper.tensor import displayed_sign, pi_homomorphism_failures, resolved_sign

FEATURES = ["|f||t_i|", "|t_i|", "|t_s|", "|f||t_s|", "|t_s||t_i|", "|f|", "1"]


def rule(mask):
    def sign(pf, pi, ps):
        vals = [pf * pi, pi, ps, pf * ps, ps * pi, pf, 1]
        return -1 if sum(v for v, b in zip(vals, mask) if b) % 2 else 1

    return sign


def passes(sign, signatures, deg):
    return all(not pi_homomorphism_failures(m, n, deg, sign) for m, n in signatures)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--deg", type=int, default=2)
    args = ap.parse_args()
    screen = [(1, 0), (0, 1), (1, 1), (1, 2)]
    t0 = time.perf_counter()
    survivors = []
    for mask in product((0, 1), repeat=len(FEATURES)):
        if passes(rule(mask), screen, args.deg):
            survivors.append(mask)
    print(f"{2 ** len(FEATURES)} rules screened on {screen} at degree <= {args.deg} ({time.perf_counter() - t0:.1f}s)")
    for mask in survivors:
        L = " + ".join(f for f, b in zip(FEATURES, mask) if b) or "0"
        deg3 = passes(rule(mask), [(1, 1), (1, 2), (2, 1)], 3)
        print(f"  survives: (-1)^({L}); degree 3 on (1,1),(1,2),(2,1): {deg3}")
    for name, sign in (("displayed (-1)^{|t_i|(|I|-1)}", displayed_sign), ("adopted (-1)^{|t_s|(|I|-1)}", resolved_sign)):
        fails = pi_homomorphism_failures(1, 1, 2, sign)
        print(f"{name}: {len(fails)} failing pairs at (1,1), degree <= 2")


if __name__ == "__main__":
    main()
