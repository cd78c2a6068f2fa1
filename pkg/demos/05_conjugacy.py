"""Numerical conjugacy between the linear model and a nonlinear map.

Two maps locking at the same reduced rotation number are conjugate; the
homeomorphism is pinned on preimage chains, periodic points, and pushed
forward from seeds on the value gap, then certified by its defect
max |target(H(x)) - H(S(x))| on a fine grid.
"""

import numpy as np

from fareytongues import (LinearParams, Rational, build_homeomorphism,
                          from_linear, sweep_map)

src = LinearParams(0.5, 0.75)
r = Rational(2, 1)

print("source: linear (0.5, 0.75), rotation 1/2")
for label, target in (
    ("the same linear map", from_linear(0.5, 0.75)),
    ("linear (0.6, 0.7)", from_linear(0.6, 0.7)),
    ("quadratic slope 0.4, cut 0.5", sweep_map("quadratic", 0.4, 0.5)),
):
    h = build_homeomorphism(src, r, target, depth=40)
    print(f"  vs {label}: {h.knots_s.size} knots, residual {h.residual:.2e}")

print("\nresidual versus truncation depth (quadratic target):")
tgt = sweep_map("quadratic", 0.4, 0.5)
for depth in (5, 10, 20, 40, 80):
    h = build_homeomorphism(src, r, tgt, depth=depth)
    print(f"  depth {depth:3d}: residual {h.residual:.3e}")

h = build_homeomorphism(src, r, tgt, depth=40)
xs = np.linspace(0.0, 1.0, 9)
print("\nsampled homeomorphism:")
for x, y in zip(xs, h(xs)):
    print(f"  H({x:.3f}) = {y:.6f}")
