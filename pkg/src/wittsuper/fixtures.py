"""Named fixtures shared by the verification suites, the CLI and the tests.

Expected verdicts in the classification battery are read off the decision
table of the quotient lemma and the trichotomy; they are inputs to the checks,
never outputs of the code under test.
"""

from fractions import Fraction

from .geometry import ShiftedCone, SupportSet

H = Fraction(1, 2)


def _cone(base, free=(), plus=()):
    return ShiftedCone(tuple(Fraction(c) for c in base), tuple(free), tuple(plus))


# name -> (support, note)
CONE_FIXTURES = {
    "zline": (SupportSet((_cone((0,), [(1,)]),)), "λ+Zε1, m=1"),
    "ray": (SupportSet((_cone((0,), (), [(1,)]),)), "Z_+ε1 = supp C[t]"),
    "zline_zminus": (SupportSet((_cone((H, 0), [(1, 0)], [(0, -1)]),)), "λ+Zε1+Z_-ε2"),
    "zline_zplus": (SupportSet((_cone((0, 0), [(1, 0)], [(0, 1)]),)), "Zε1 × Z_+ε2"),
    "quadrant": (SupportSet((_cone((0, 0), (), [(1, 0), (0, 1)]),)), "supp A_2"),
    "lattice2": (SupportSet((_cone((H, Fraction(1, 3)), [(1, 0), (0, 1)]),)), "λ+Z^2"),
    "octant_neg3": (SupportSet((_cone((-1, -1, -1), (), [(-1, 0, 0), (0, -1, 0), (0, 0, -1)]),)), "supp A^σ_3"),
    "mixed3": (SupportSet((_cone((H, 0, -1), [(1, 0, 0)], [(0, 1, 0), (0, 0, -1)]),)), "λ+Zε1+Z_+ε2+Z_-ε3"),
    "level_line": (SupportSet((_cone((H, -H), [(1, -1)]),)), "λ+Z(ε1-ε2)"),
    "point": (SupportSet((_cone((0, 0)),)), "single point (trivial module)"),
}

# (name, m, n, P, M tag, expected case, expected lemma rule)
CLASSIFY_BATTERY = [
    ("nonfund-laurent", 1, 1, "L1/2", "kac:2,3", "i", "1"),
    ("nonfund-21", 2, 1, "L1/2,Q", "kac:2,2,3", "i", "1"),
    ("trivial-A", 1, 1, "A", "trivial", "iii", "2d"),
    ("trivial-PiA", 1, 1, "PiA", "trivial", "iii", "2d"),
    ("trivial-laurent", 1, 1, "L1/2", "trivial", "i", "2d"),
    ("str-laurent", 1, 1, "L1/2", "str", "i", "2e"),
    ("str-A-21", 2, 1, "A", "pistr", "i", "2e"),
    ("str-quot", 1, 1, "Q", "str", "ii", "2e+2c"),
    ("fund-A1-laurent", 1, 1, "L1/2", "fund:A:1", "ii", "2a+2c"),
    ("fund-A2-A", 1, 1, "A", "fund:A:2", "ii", "2a+2c"),
    ("fund-A1-21", 2, 1, "L1/2,P", "fund:A:1", "ii", "2a+2c"),
    ("fund-Asigma-12", 1, 2, "L1/2", "fund:Asigma:-2", "ii", "2a+2c"),
]

# (name, P_1 over K_2, V_1 descriptor over K_2, level, expected verdict)
HC_FIXTURES = [
    ("finite-V", "L1/2,P", "A", 2, True),
    ("polynomial-P", "A", "L1/2,L-1/2", 0, True),
    ("ray-matched", "P,L1/2", "P,Q", 0, True),
    ("laurent-vs-line", "L1/2,L1/2", "L1/2,L-1/2", 0, False),
    ("ray-mismatched", "P,L1/2", "Q,P", 0, False),
]

# (name, P over K_{1,1}, M tag over gl_{1,1}, S tag over gl_1 on index 2)
OMEGA_BAR_FIXTURES = [
    ("A-trivial-c1", "A", "trivial", "scalar:1"),
    ("laurent-str-c2", "L1/2", "str", "scalar:2"),
    ("quot-kac-c1/3", "Q", "kac:2,3", "scalar:1/3"),
    ("A-trivial-S0", "A", "trivial", "trivial"),
]

# (name, m, n, P, P' over K_{n,m}, level, window radius)
DIFF_FIXTURES = [
    ("laurent-A-11", 1, 1, "L1/2", "A", 1, 1),
    ("quot-A-11", 1, 1, "Q", "A", 2, 1),
    ("laurent-A-21", 2, 1, "L1/2,P", "A", 1, 1),
    ("quot-laurent-21", 2, 1, "Q,P", "L1/3", Fraction(1, 3), 1),
    ("laurent-Asigma-12", 1, 2, "L1/2", "Asigma", -2, 1),
    ("A-A-12", 1, 2, "A", "A", 1, 1),
]

# name -> CLI arguments; reports are frozen under tests/golden/<name>.json
GOLDEN_JOBS = {
    "verify-jacobi-22": ["verify", "--suite", "jacobi", "--m", "2", "--n", "2", "--deg", "3"],
    "shadow-zline": ["shadow", "--support", "fixtures/zline.cone"],
    "parabolic-zline-zminus": ["parabolic", "--support", "fixtures/zline_zminus.cone"],
    "classify-A-trivial": ["classify", "--P", "A", "--M", "trivial"],
    "classify-laurent-fund": ["classify", "--P", "L1/2", "--M", "fund:A:1", "--window", "2"],
    "omega-A-trivial": ["omega", "--P", "A", "--M", "trivial", "--S", "scalar:1"],
}
