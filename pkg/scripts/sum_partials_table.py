"""Table of P = Σ_s ∂_s P for small descriptors: the factor rule against a window computation.

This decides the Str-like rows of the classification table (simple iff Σ∂P = P).

    python3 scripts/sum_partials_table.py
"""

from itertools import product

from wittsuper.descriptors import parse_descriptor, sum_partials_window


def main():
    factors = ["P", "Q", "L1/2", "L-1/3"]
    print(f"{'descriptor':18s} {'n':>2s}  rule   window")
    for m in (1, 2):
        for combo in product(factors, repeat=m):
            for n in (0, 1, 2):
                d = parse_descriptor(",".join(combo), m, n)
                rule, window = d.sum_partials_is_everything(), sum_partials_window(d, radius=2)
                flag = "" if rule == window else "  MISMATCH"
                print(f"{','.join(combo):18s} {n:2d}  {str(rule):5s}  {str(window):5s}{flag}")


if __name__ == "__main__":
    main()
