#!/usr/bin/env python3
"""Independent hand-check of the worked fixture values.

Uses only exact fractions and the shoelace formula; no code is shared with
the Rust implementation. Run: python3 scripts/hand_check.py [--json OUT]

With --json the computed values are written as {"name": "p/q"} for the
fixture tests to compare against.
"""
import json
import sys
from fractions import Fraction as F


def shoelace(pts):
    s = F(0)
    for (x1, y1), (x2, y2) in zip(pts, pts[1:] + pts[:1]):
        s += x1 * y2 - x2 * y1
    return abs(s) / 2


def tri(leg):
    # right isosceles triangle with legs on the axes
    return shoelace([(F(0), F(0)), (F(leg), F(0)), (F(0), F(leg))])


checks = []

# unit-triangle coconvex body in the quadrant, xi = (1,1)
c = tri(1)  # sector C ∩ {x+y <= 1}
checks.append(("sector constant c", c, F(1, 2)))
trap = tri(3) - tri(1)
checks.append(("trapezoid (1,0),(3,0),(0,3),(0,1) area", shoelace(
    [(F(1), F(0)), (F(3), F(0)), (F(0), F(3)), (F(0), F(1))]), F(4)))
checks.append(("trapezoid via sector difference", trap, F(4)))
checks.append(("co_volume at t=3", tri(3) - (tri(3) - tri(1)), F(1, 2)))
checks.append(("co_volume at t=5", tri(5) - (tri(5) - tri(1)), F(1, 2)))
# Vol_beta(lambda) = area of leg-lambda triangle = lambda^2/2
for lam in (1, 2, 3):
    checks.append((f"Vol_beta({lam})", tri(lam), F(lam * lam, 2)))
# Q^C Hessian: (2/2!) * d^2/dl^2 (l^2/2) = 1 ; B^C = (1/2!) * 1 = 1/2
checks.append(("Q^C hessian entry", F(2, 2) * 1, F(1)))
checks.append(("B^C entry", F(1, 2) * 1, F(1, 2)))
# c' = c * (empty product of s_i) for d = 2
checks.append(("c'", c, F(1, 2)))
# homothetic triangle pair (legs 1, 2): Vol_beta(1,1) = 9/2, lifted at t=4
checks.append(("homothetic lifted volume", c * 16 - tri(3), F(7, 2)))
# co_sum of two unit triangles = leg-2 triangle
checks.append(("A (+) A area", tri(2), F(2)))

# K1 = {x+y>=1}, K2 = {2x+y>=2, x+2y>=2} in the quadrant.
# K2 vertices (2,0), (2/3,2/3), (0,2); K1+K2 lower chain (3,0),(5/3,2/3),(2/3,5/3),(0,3)
a2 = shoelace([(F(0), F(0)), (F(2), F(0)), (F(2, 3), F(2, 3)), (F(0), F(2))])
checks.append(("area of A2", a2, F(4, 3)))
a12 = shoelace([(F(0), F(0)), (F(3), F(0)), (F(5, 3), F(2, 3)),
                (F(2, 3), F(5, 3)), (F(0), F(3))])
checks.append(("area of A1 (+) A2", a12, F(19, 6)))

# convex fixtures
checks.append(("box 3x2 area", F(3) * 2, F(6)))
# Vol(l1 [0,1]^2 + l2 [0,3]x[0,2]) = (l1+3 l2)(l1+2 l2): fit at l2 = 1
def boxvol(l1, l2):
    return (l1 + 3 * l2) * (l1 + 2 * l2)
coef_l1l2 = boxvol(F(1), F(1)) - boxvol(F(1), F(0)) - boxvol(F(0), F(1))
checks.append(("coefficient of l1*l2", coef_l1l2, F(5)))
checks.append(("MV([0,1]^2,[0,3]x[0,2])", (F(12) - 1 - 6) / 2, F(5, 2)))
checks.append(("clip cube x+y+z<=1", F(1, 6), F(1, 6)))

bad = 0
for name, got, want in checks:
    ok = got == want
    bad += not ok
    print(f"{'ok ' if ok else 'BAD'} {name}: {got} (expected {want})")
if len(sys.argv) == 3 and sys.argv[1] == "--json":
    with open(sys.argv[2], "w") as fh:
        json.dump({name: str(got) for name, got, _ in checks}, fh, indent=2, sort_keys=True)
        fh.write("\n")
raise SystemExit(1 if bad else 0)
