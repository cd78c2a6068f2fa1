"""Closed forms for the linear model alpha*x + beta (mod 1).

Tongue boundaries, membership, classification by tree descent, and the exact
periodic orbit, all evaluable in exact rational arithmetic.
"""

from fractions import Fraction

from fareytongues import (LinearParams, Rational, classify, periodic_points,
                          preimage_zero_chain, region_boundaries, step)

half = Fraction(1, 2)

print("tongue boundaries in beta at slope 1/2")
for n, l in ((3, 1), (2, 1), (3, 2)):
    lo, up = region_boundaries(Rational(n, l), half)
    print(f"  {l}/{n}: [{lo}, {up})  width {up - lo}")

p = LinearParams(half, Fraction(3, 4))
print("\nparameters (1/2, 3/4) classify as", classify(p))

orb = periodic_points(Rational(2, 1), p)
print("exact periodic orbit:", orb.points)
x = orb.points[0]
print("one loop:", x, "->", step(p, x), "->", step(p, step(p, x)))

ch = preimage_zero_chain(Rational(2, 1), p)
print("preimages of 0:", ch.points, "and the formal next value", ch.beyond,
      "leaves [0, 1]")

print("\nsweeping beta at slope 0.6")
for beta in (0.40, 0.55, 0.70, 0.80, 0.95):
    print(f"  beta = {beta}: {classify(LinearParams(0.6, beta), max_n=30)}")
