"""Closed-form tongue geometry of the linear contracting map x -> alpha*x + beta (mod 1).

The Nagumo-Sato (Keener) map with slope alpha and offset beta in (0, 1) locks
onto a period-n orbit exactly when beta falls in a half-open tongue
[B_L(alpha), B_U(alpha)) indexed by a reduced rotation number l/n.  This
module evaluates those boundaries, tests membership, classifies parameters by
Stern-Brocot descent, and produces the periodic orbit and the preimage chain
of 0 in closed form.

All formulas are polynomial in alpha and beta, so every function here accepts
either floats or ``fractions.Fraction`` values and computes exactly in the
latter case.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .farey import Rational, char_seq


class Classification(Enum):
    """Non-tongue outcomes of :func:`classify`."""

    PERIOD_ONE = "period-1"
    NOT_FOUND = "not-found"


PERIOD_ONE = Classification.PERIOD_ONE
NOT_FOUND = Classification.NOT_FOUND


@dataclass(frozen=True)
class LinearParams:
    """Slope/offset pair of the linear model, both strictly inside (0, 1)."""

    alpha: float | Fraction
    beta: float | Fraction

    def __post_init__(self) -> None:
        if not 0 < self.alpha < 1:
            raise ValueError(f"slope must lie in (0, 1), got {self.alpha}")
        if not 0 < self.beta < 1:
            raise ValueError(f"offset must lie in (0, 1), got {self.beta}")

    @property
    def cut(self):
        """Discontinuity (1 - beta)/alpha; inside (0, 1) iff alpha + beta > 1."""
        return (1 - self.beta) / self.alpha

    @property
    def fixed_point(self):
        """Fixed point beta/(1 - alpha) of the unwrapped branch."""
        return self.beta / (1 - self.alpha)


@dataclass(frozen=True)
class TongueRegion:
    """Tongue boundaries of one rotation number at a fixed slope."""

    rational: Rational
    alpha: float | Fraction
    lower: float | Fraction
    upper: float | Fraction


@dataclass(frozen=True)
class PeriodicOrbit:
    """Period-n orbit of the linear map, in orbit order starting at the cell of 0.

    ``points[i] = beta/(1-alpha) - coefficients[i]`` and applying the map to
    ``points[i]`` gives ``points[(i+1) % n]``.
    """

    rational: Rational
    coefficients: tuple
    points: tuple


@dataclass(frozen=True)
class PreimageChain:
    """Preimages of 0: chain[i-1] holds the i-th preimage, i = 1..n-1.

    ``beyond`` is the formal n-th value, which falls outside [0, 1] whenever
    the parameters sit inside the tongue.
    """

    rational: Rational
    points: tuple
    beyond: float | Fraction


def step(p: LinearParams, x):
    """One application of the map; an exact hit alpha*x + beta = 1 wraps to 0."""
    if not 0 <= x < 1:
        raise ValueError(f"point {x} outside [0, 1)")
    y = p.alpha * x + p.beta
    return y - 1 if y >= 1 else y


def region_boundaries(r: Rational, alpha):
    """Lower and upper tongue boundaries (B_L, B_U) at the given slope.

    B_U = (1-a) (S/(1-a^n) + 1) and B_L = B_U - (1-a)(a^{n-1}-a^n)/(1-a^n)
    with S the characteristic-bit power sum over m = 1..n-1.
    """
    if not 0 < alpha < 1:
        raise ValueError(f"slope must lie in (0, 1), got {alpha}")
    bits = char_seq(r).bits
    n = r.n
    acc = 0 * alpha
    for m in range(n - 1, 0, -1):
        acc = (acc + bits[m]) * alpha
    denom = 1 - alpha**n
    upper = (1 - alpha) * (acc / denom + 1)
    lower = upper - (1 - alpha) * (alpha ** (n - 1) - alpha**n) / denom
    return lower, upper


def region(r: Rational, alpha) -> TongueRegion:
    lower, upper = region_boundaries(r, alpha)
    return TongueRegion(r, alpha, lower, upper)


def region_contains(r: Rational, p: LinearParams) -> bool:
    """Half-open membership: B_L <= beta < B_U at the slope of ``p``."""
    lower, upper = region_boundaries(r, p.alpha)
    return lower <= p.beta < upper


def classify(p: LinearParams, max_n: int = 64) -> Rational | Classification:
    """Rotation number of the tongue containing ``p``, by Stern-Brocot descent.

    With alpha + beta <= 1 the map has no discontinuity in [0, 1) and the
    answer is PERIOD_ONE.  Otherwise the tree is descended comparing beta
    against the tongue boundaries, which are monotone in the rotation number;
    NOT_FOUND means no tongue with period <= max_n contains the point.
    """
    if max_n < 2:
        raise ValueError(f"max_n must be >= 2, got {max_n}")
    if p.alpha + p.beta <= 1:
        return PERIOD_ONE
    lo = Fraction(0, 1)
    hi = Fraction(1, 1)
    for _ in range(2 * max_n):
        med = Fraction(lo.numerator + hi.numerator, lo.denominator + hi.denominator)
        if med.denominator > max_n:
            return NOT_FOUND
        r = Rational(med.denominator, med.numerator)
        lower, upper = region_boundaries(r, p.alpha)
        if p.beta < lower:
            hi = med
        elif p.beta >= upper:
            lo = med
        else:
            return r
    return NOT_FOUND


def periodic_points(r: Rational, p: LinearParams) -> PeriodicOrbit:
    """Closed-form period-n orbit for parameters inside the tongue of ``r``.

    Point i is beta/(1-alpha) - A_i with
    A_i = (sum_{m<i} k_m a^{i-m-1} + sum_{m>=i} k_m a^{n+i-m-1}) / (1-a^n).
    """
    if not region_contains(r, p):
        raise ValueError(f"parameters {p} outside the tongue of {r}")
    bits = char_seq(r).bits
    n = r.n
    a = p.alpha
    denom = 1 - a**n
    coeffs = []
    for i in range(n):
        s = 0 * a
        for m in range(i):
            s += bits[m] * a ** (i - m - 1)
        for m in range(i, n):
            s += bits[m] * a ** (n + i - m - 1)
        coeffs.append(s / denom)
    base = p.beta / (1 - a)
    points = tuple(base - c for c in coeffs)
    for x in points:
        if not 0 <= x < 1:
            raise ArithmeticError(f"computed periodic point {x} outside [0, 1)")
    return PeriodicOrbit(r, tuple(coeffs), points)


def preimage_zero_chain(r: Rational, p: LinearParams) -> PreimageChain:
    """Preimages of 0 in closed form, plus the formal n-th value.

    The i-th preimage is sum_{m=1..i} (k_{n-i+m-1} - beta)/alpha^m; it lies in
    [0, 1] for i = 1..n-1 while the i = n evaluation leaves the interval.
    """
    if not region_contains(r, p):
        raise ValueError(f"parameters {p} outside the tongue of {r}")
    bits = char_seq(r).bits
    n = r.n

    def formal(i: int):
        s = 0 * p.alpha
        apow = 1
        for m in range(1, i + 1):
            apow = apow * p.alpha
            s += (bits[n - i + m - 1] - p.beta) / apow
        return s

    points = tuple(formal(i) for i in range(1, n))
    for x in points:
        if not 0 <= x <= 1:
            raise ArithmeticError(f"chain point {x} outside [0, 1]")
    beyond = formal(n)
    if 0 <= beyond <= 1:
        raise ArithmeticError(f"formal n-th preimage {beyond} unexpectedly inside [0, 1]")
    return PreimageChain(r, points, beyond)


def full_chain(r: Rational, p: LinearParams) -> tuple:
    """Chain (0, S^-1(0), ..., S^-(n-1)(0)) including the root point 0."""
    zero = 0 * p.alpha
    return (zero,) + preimage_zero_chain(r, p).points
