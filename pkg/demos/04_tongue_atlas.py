"""Solving a whole tongue atlas by nested Farey bracketing.

Each tongue's locking interval in the cut parameter solves a fixed-point
equation of a composed branch word; mediant tongues are bracketed by their
parents' solved edges.  The sine family here locks with every rotation
number, ordered decreasingly in the cut.
"""

from fareytongues import detect_period, farey_atlas, linear_crosscheck, Rational, sine_family

fam = sine_family(2.0)
print(f"sine family: top cut c* = {fam.c_star}, contraction bound {fam.kappa:.4f}")

tongues = farey_atlas(fam, depth=4)
print(f"\n{len(tongues)} tongues at depth 4, sorted by c_left:")
print(f"  {'l/n':>6} {'c_left':>12} {'c_right':>12} {'width':>10}")
for t in tongues:
    print(f"  {str(t.rational):>6} {t.c_left:12.8f} {t.c_right:12.8f}"
          f" {t.c_right - t.c_left:10.2e}")

print("\nmidpoint of each tongue locks at its own (n, l):")
for t in tongues[:5]:
    m = fam.map_at(0.5 * (t.c_left + t.c_right))
    s = detect_period(m, m.lo)
    print(f"  {t.rational}: detected period {s.period}, rotation {s.rotation}")

print("\ncrosscheck against the exact linear model (f(x) = alpha x):")
for alpha in (0.3, 0.5, 0.7):
    dev = linear_crosscheck(alpha, Rational(5, 2))
    print(f"  slope {alpha}: tongue 2/5 endpoint deviation {dev:.2e}")
