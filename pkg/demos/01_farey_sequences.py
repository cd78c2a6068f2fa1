"""Characteristic sequences and the Stern-Brocot tree.

Every reduced fraction l/n with 0 < l < n indexes a locking tongue, and its
0/1 characteristic sequence encodes which branch a period-n orbit uses at
each step.  Mediants of Farey neighbours concatenate their sequences.
"""

from fareytongues import Rational, char_seq, lhat, mediant_concat, seq_at, stern_brocot

print("characteristic sequences")
for n, l in ((2, 1), (3, 1), (3, 2), (5, 2), (8, 3)):
    r = Rational(n, l)
    s = char_seq(r)
    print(f"  {r}: bits {''.join(map(str, s.bits))}  (ones = {sum(s.bits)},"
          f" inverse-of-l mod n = {lhat(r)})")

print("\nperiodic extension of 2/5:", [seq_at(char_seq(Rational(5, 2)), m) for m in range(-5, 10)])

print("\nmediant concatenation: 1/3 (+) 1/2 = 2/5")
med = mediant_concat(char_seq(Rational(3, 1)), char_seq(Rational(2, 1)))
print("  concatenated bits:", med.bits, "== direct evaluation:", char_seq(Rational(5, 2)).bits)

print("\nStern-Brocot tree to depth 4 (value: left parent, right parent)")
for node in stern_brocot(4):
    print(f"  {node.value}: {node.left}, {node.right}")
