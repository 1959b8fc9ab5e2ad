"""Empirical r0 for ω̄ on windows of 𝓕(F(P,M),S) over W(1,1) with k = gl_1.

For each fixture, prints the annihilation verdict for r = 0..r_max+confirm and
the smallest r from which every ω̄_{α,β,I,x,r,1} with |α|,|β| ≤ exps kills the window.

    python3 scripts/omega_bar_r0.py --radius 2 --exps 2
"""

import argparse
import time

from wittsuper.enveloping import ubar
from wittsuper.fixtures import OMEGA_BAR_FIXTURES
from wittsuper.serialize import parse_descriptor, parse_gl_tag, parse_k_tag
from wittsuper.tensor import omega_bar_r0, window_box


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--radius", type=int, default=2)
    ap.add_argument("--exps", type=int, default=2)
    ap.add_argument("--r-max", type=int, default=6)
    args = ap.parse_args()
    alg = ubar(1, 1, m=2, blocks=[(2,)])
    for name, Ps, Ms, Ss in OMEGA_BAR_FIXTURES:
        t0 = time.perf_counter()
        P, M, S = parse_descriptor(Ps, 1, 1), parse_gl_tag(Ms, 1, 1).module, parse_k_tag(Ss, alg.spec)
        r0, table, dim = omega_bar_r0(alg, P, M, S, window_box(1, args.radius), (2, 2), 1, args.exps, args.r_max)
        row = "".join("x" if table[r] else "." for r in sorted(table))
        print(f"{name:16s} dim {dim:3d}  r: {row}  r0 = {r0}  ({time.perf_counter() - t0:.1f}s)")


if __name__ == "__main__":
    main()
