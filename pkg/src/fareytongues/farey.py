"""Exact integer arithmetic for characteristic sequences and the Stern-Brocot tree.

Everything in this module is exact: a locking tongue is indexed by a reduced
fraction l/n, its 0/1 characteristic sequence is computed with integer floor
arithmetic only, and the Farey mediant structure is enumerated symbolically.
No floating point enters anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd


@dataclass(frozen=True)
class Rational:
    """A reduced fraction l/n indexing a tongue (the rotation number).

    ``n`` is the period (denominator, at least 2), ``l`` the wrap count
    (numerator), with 1 <= l < n and gcd(n, l) = 1.
    """

    n: int
    l: int

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or not isinstance(self.l, int):
            raise ValueError(f"Rational needs integers, got ({self.n!r}, {self.l!r})")
        if self.n < 2:
            raise ValueError(f"period must satisfy n >= 2, got n={self.n}")
        if not 1 <= self.l < self.n:
            raise ValueError(f"numerator must satisfy 1 <= l < n, got l={self.l}, n={self.n}")
        g = gcd(self.n, self.l)
        if g != 1:
            raise ValueError(f"(n, l) = ({self.n}, {self.l}) is not reduced, gcd = {g}")

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.l, self.n)

    def __lt__(self, other: "Rational") -> bool:
        return self.l * other.n < other.l * self.n

    def __str__(self) -> str:
        return f"{self.l}/{self.n}"


@dataclass(frozen=True)
class CharSeq:
    """Characteristic 0/1 sequence of a tongue over one period.

    Bit m records which branch the period-n orbit uses at step m (1 is the
    wrapping branch at or above the cut).  The sequence always starts with 0,
    ends with 1, and carries exactly ``l`` ones; outside [0, n-1] it extends
    periodically.
    """

    rational: Rational
    bits: tuple[int, ...]

    def __post_init__(self) -> None:
        n, l = self.rational.n, self.rational.l
        if len(self.bits) != n:
            raise ValueError(f"expected {n} bits, got {len(self.bits)}")
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError("bits must be 0 or 1")
        if self.bits[0] != 0 or self.bits[-1] != 1:
            raise ValueError("characteristic sequence must start with 0 and end with 1")
        if sum(self.bits) != l:
            raise ValueError(f"bit sum {sum(self.bits)} != numerator {l}")


@dataclass(frozen=True)
class BoundaryFraction:
    """Edge fraction 0/1 or 1/1 of the Stern-Brocot tree.

    Not a valid tongue index (n = 1); carries the one-bit sequence that makes
    mediant concatenation work at the tree edges.
    """

    n: int
    l: int
    bits: tuple[int, ...]

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.l, self.n)


#: Left edge 0/1 of the tree, sequence (0).
ZERO_EDGE = BoundaryFraction(1, 0, (0,))
#: Right edge 1/1 of the tree, sequence (1).
ONE_EDGE = BoundaryFraction(1, 1, (1,))


def char_seq(r: Rational) -> CharSeq:
    """Characteristic sequence k_m = floor((m+1)l/n) - floor(ml/n), m = 0..n-1."""
    n, l = r.n, r.l
    bits = tuple(((m + 1) * l) // n - (m * l) // n for m in range(n))
    return CharSeq(r, bits)


def seq_at(s: CharSeq, m: int) -> int:
    """Bit at any integer index via the periodic extension k_{m +- n} = k_m."""
    return s.bits[m % s.rational.n]


def lhat(r: Rational) -> int:
    """Smallest t >= 1 with t*l = 1 (mod n); exists because gcd(n, l) = 1."""
    return pow(r.l, -1, r.n)


def mediant_concat(a: CharSeq | BoundaryFraction, b: CharSeq | BoundaryFraction) -> CharSeq:
    """Characteristic sequence of the mediant of two Farey neighbours.

    ``a`` indexes (n, l) and ``b`` indexes (n', l') with l/n < l'/n' and
    n*l' - n'*l = 1.  Concatenating a's bits followed by b's bits yields the
    sequence of (n+n', l+l'); this identity is re-verified bit for bit against
    the direct floor formula before returning.
    """
    na, la = _frac_parts(a)
    nb, lb = _frac_parts(b)
    det = na * lb - nb * la
    if det != 1:
        raise ValueError(
            f"not ordered Farey neighbours: {la}/{na}, {lb}/{nb} have n*l' - n'*l = {det}"
        )
    med = Rational(na + nb, la + lb)
    bits = a.bits + b.bits
    if bits != char_seq(med).bits:
        raise ArithmeticError(f"mediant concatenation mismatch for {med}")
    return CharSeq(med, bits)


def _frac_parts(s: CharSeq | BoundaryFraction) -> tuple[int, int]:
    if isinstance(s, CharSeq):
        return s.rational.n, s.rational.l
    return s.n, s.l


@dataclass(frozen=True)
class SternBrocotNode:
    """A tree fraction together with its two Farey parents.

    Parents are plain fractions; 0/1 and 1/1 mark the tree edges.
    """

    value: Rational
    left: Fraction
    right: Fraction

    @property
    def depth_key(self) -> Fraction:
        return self.value.fraction


def stern_brocot(depth: int) -> list[SternBrocotNode]:
    """All mediants reachable in at most ``depth`` steps between 0/1 and 1/1.

    Nodes are listed level by level, left to right, so every node's parents
    appear before it.  All fractions are reduced by construction.
    """
    if depth < 1:
        raise ValueError(f"depth must be >= 1, got {depth}")
    nodes: list[SternBrocotNode] = []
    frontier: list[tuple[Fraction, Fraction]] = [(Fraction(0, 1), Fraction(1, 1))]
    for _ in range(depth):
        next_frontier: list[tuple[Fraction, Fraction]] = []
        for lo, hi in frontier:
            med = Fraction(lo.numerator + hi.numerator, lo.denominator + hi.denominator)
            nodes.append(SternBrocotNode(Rational(med.denominator, med.numerator), lo, hi))
            next_frontier.append((lo, med))
            next_frontier.append((med, hi))
        frontier = next_frontier
    return nodes


def edge_sequence(f: Fraction) -> CharSeq | BoundaryFraction:
    """Sequence attached to a tree fraction: an edge sentinel or the real one."""
    if f == Fraction(0, 1):
        return ZERO_EDGE
    if f == Fraction(1, 1):
        return ONE_EDGE
    return char_seq(Rational(f.denominator, f.numerator))
