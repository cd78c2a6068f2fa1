"""The generic two-branch engine on a nonlinear family.

Structural checks (non-overlap, endpoint limits, monotone branches, finite
preimage chain), orbit detection, and the combinatorial ordering of the
preimage chain for the quadratic family at slope 0.4.
"""

from fareytongues import check_assumptions, detect_period, preimage_order, sweep_map

m = sweep_map("quadratic", 0.4, 0.5)
print("map:", m.name, "on", (m.lo, m.hi), "cut", m.cut)

rep = check_assumptions(m)
print("checks pass:", rep.ok, " chain length n =", rep.n, " wraps l =", rep.l)
print("preimage chain of the bottom endpoint:", rep.chain)

s = detect_period(m, 0.0)
print("\ndetected period", s.period, "rotation", s.rotation)
print("cycle points:", s.points)
print("itinerary from the smallest point:", s.itinerary)
print("transient", s.transient, "steps, cycle residual", s.residual)

order = preimage_order(m, rep)
print("\nchain sorted ascending: ranks", order.rho, "case", order.case)

print("\nsame checks for a period-5 member (cut from the tongue solver)")
from fareytongues import Rational, quadratic_family, solve_by_descent

fam = quadratic_family(0.4)
t = solve_by_descent(fam, Rational(5, 2))
mid = 0.5 * (t.c_left + t.c_right)
m5 = fam.map_at(mid)
rep5 = check_assumptions(m5)
s5 = detect_period(m5, 0.0)
print(f"  cut {mid:.6f}: chain (n, l) = ({rep5.n}, {rep5.l}),"
      f" detected period {s5.period}, rotation {s5.rotation}")
print("  chain order:", preimage_order(m5, rep5).rho)
