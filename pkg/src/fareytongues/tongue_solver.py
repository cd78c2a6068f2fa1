"""Tongue-interval solvers for one-parameter families of contracting maps.

A family is either built from a contracting generator g with g(0) = 0 and
g(c*) + 1 = c* (the map acts on [g(c), g(c)+1] with cut c, "from-g"), or from
a contraction f on [0, 1] with f(0) = 0 and f(1) < 1 via the two shifted
branches f(x) - f(c) + 1 and f(x) - f(c) ("from-f").  For every reduced
rotation number l/n the cut values at which the period-n locking appears and
disappears solve fixed-point equations of composed branch words; this module
builds those words from the characteristic sequence, solves them (plain
contraction iteration for from-g, a bisection-safeguarded fixed point in c for
from-f), and walks the Stern-Brocot tree to produce whole tongue atlases with
nested brackets.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from .farey import Rational, SternBrocotNode, char_seq, stern_brocot
from .linear_model import region_boundaries

DEFAULT_TOL = 1e-10
DEFAULT_MAX_ITER = 100_000


class FamilyError(ValueError):
    """The supplied family violates a structural requirement."""


class NonOverlapError(RuntimeError):
    """A solve produced values incompatible with the non-overlap property."""


@dataclass(frozen=True)
class FamilySpec:
    """One-parameter family of two-branch maps indexed by the cut c.

    ``base`` is g for from-g families (branches g and g+1 on [g(c), g(c)+1])
    and f for from-f families (branches f - f(c) and f - f(c) + 1 on [0, 1]).
    ``kappa`` is the declared Lipschitz bound of the base, strictly below 1.
    ``c_star`` is the right end of the admissible cut range (the fixed point
    of g + 1 for from-g; 1 for from-f).
    """

    kind: str
    base: Callable
    kappa: float
    c_star: float
    name: str = ""

    def __post_init__(self) -> None:
        if self.kind not in ("from-g", "from-f"):
            raise FamilyError(f"unknown family kind {self.kind!r}")
        if not 0 < self.kappa < 1:
            raise FamilyError(f"contraction bound must lie in (0, 1), got {self.kappa}")

    @property
    def c_range(self) -> tuple[float, float]:
        return 0.0, self.c_star

    def branches(self, c: float) -> tuple[Callable, Callable]:
        """(g, h) pair at cut c, h being the branch used below the cut."""
        if self.kind == "from-g":
            g = self.base

            def h(x):
                return g(x) + 1.0

            return g, h
        fc = self.base(c)
        f = self.base

        def g_c(x):
            return f(x) - fc

        def h_c(x):
            return f(x) - fc + 1.0

        return g_c, h_c

    def map_at(self, c: float):
        """Concrete piecewise map of the family member with cut c."""
        from .piecewise_map import PiecewiseMap

        g, h = self.branches(c)
        if self.kind == "from-g":
            lo = self.base(c)
            hi = lo + 1.0
            if not lo < c < hi:
                raise FamilyError(f"cut {c} outside the member domain [{lo}, {hi}]")
            return PiecewiseMap(lo, hi, c, h, g, kappa=self.kappa,
                                name=f"{self.name}@c={c}")
        if not 0.0 < c < 1.0:
            raise FamilyError(f"cut {c} outside (0, 1)")
        return PiecewiseMap(0.0, 1.0, c, h, g, kappa=self.kappa,
                            name=f"{self.name}@c={c}")


def _grid_slope_check(func: Callable, a: float, b: float, kappa: float,
                      samples: int = 2048, slack: float = 1e-6) -> None:
    xs = np.linspace(a, b, samples)
    vals = np.asarray(func(xs), dtype=float)
    dv = np.diff(vals)
    dx = np.diff(xs)
    if np.any(dv <= 0):
        i = int(np.nonzero(dv <= 0)[0][0])
        raise FamilyError(f"base function not strictly increasing near x = {xs[i]:.6g}")
    worst = float(np.max(dv / dx))
    if worst > kappa + slack:
        raise FamilyError(f"sampled slope {worst:.6g} exceeds declared bound {kappa}")


def family_from_g(g: Callable, kappa: float, c_star: float | None = None,
                  name: str = "", validate: bool = True) -> FamilySpec:
    """Family on [g(c), g(c)+1]; c* is the fixed point of g + 1, solved if omitted."""
    if c_star is None:
        c_star = _solve_c_star(g)
    fam = FamilySpec("from-g", g, kappa, c_star, name)
    if validate:
        if abs(g(0.0)) > 1e-12:
            raise FamilyError(f"g(0) = {g(0.0)}, expected 0")
        if abs(g(c_star) + 1.0 - c_star) > 1e-9:
            raise FamilyError(f"g(c*) + 1 - c* = {g(c_star) + 1.0 - c_star:.3g}, expected 0")
        _grid_slope_check(g, 1e-9, c_star, kappa)
    return fam


def family_from_f(f: Callable, kappa: float, name: str = "",
                  validate: bool = True) -> FamilySpec:
    """Family on [0, 1] with shifted branches f - f(c) (+1 below the cut)."""
    fam = FamilySpec("from-f", f, kappa, 1.0, name)
    if validate:
        if abs(f(0.0)) > 1e-12:
            raise FamilyError(f"f(0) = {f(0.0)}, expected 0")
        if not f(1.0) < 1.0:
            raise FamilyError(f"f(1) = {f(1.0)} must be below 1")
        _grid_slope_check(f, 0.0, 1.0, kappa)
    return fam


def _solve_c_star(g: Callable) -> float:
    """Unique root of g(c) + 1 = c; exists since g(c)+1-c strictly decreases from 1."""
    hi = 2.0
    while g(hi) + 1.0 > hi:
        hi *= 2.0
        if hi > 2.0**60:
            raise FamilyError("g(c) + 1 = c has no root; base is not contracting")
    lo = 0.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if g(mid) + 1.0 > mid:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class Word:
    """Composed branch word of one tongue edge.

    ``symbols`` reads left to right in composition order with the rightmost
    factor applied first; the inner part comes from characteristic bits
    k_1..k_{n-2} (1 -> g, 0 -> h) and the terminal pair is "gh" for the left
    edge, "hg" for the right edge.
    """

    rational: Rational
    inner: str
    terminal: str

    @property
    def symbols(self) -> str:
        return self.inner + self.terminal

    def apply(self, fam: FamilySpec, c: float, x: float) -> float:
        g, h = fam.branches(c)
        z = x
        for sym in reversed(self.symbols):
            z = g(z) if sym == "g" else h(z)
        return z


def boundary_words(r: Rational) -> tuple[Word, Word]:
    """Left and right edge words of the tongue of ``r``; empty inner part for n = 2."""
    bits = char_seq(r).bits
    inner = "".join("g" if b else "h" for b in bits[1:-1])
    return Word(r, inner, "gh"), Word(r, inner, "hg")


@dataclass(frozen=True)
class TongueInterval:
    """Solved locking interval (c_left, c_right) with solver diagnostics."""

    rational: Rational
    c_left: float
    c_right: float
    bracket: tuple[float, float]
    iterations: int
    residuals: tuple[float, float]


def _check_non_overlap(fam: FamilySpec, c: float) -> None:
    g, h = fam.branches(c)
    if not h(g(c)) > g(h(c)):
        raise NonOverlapError(
            f"h(g(c)) = {h(g(c))} <= g(h(c)) = {g(h(c))} at c = {c}: "
            "family violates the non-overlap property"
        )


def _banach_solve(fam: FamilySpec, word: Word, a: float, b: float,
                  tol: float, max_iter: int) -> tuple[float | None, int, float]:
    """Iterate a fixed (c-independent) contraction word to its fixed point.

    The word has modulus at most kappa^n, so the stopping rule
    |step| <= tol * min(1, (1 - kw)/kw) bounds the true error and the final
    residual by tol.
    """
    kw = fam.kappa ** word.rational.n
    stop = tol * min(1.0, (1.0 - kw) / kw)
    x = 0.5 * (a + b)
    it = 0
    for it in range(1, max_iter + 1):
        x2 = word.apply(fam, x, x)
        _check_non_overlap(fam, x2)
        done = abs(x2 - x) <= stop
        x = x2
        if done:
            break
    else:
        return None, it, abs(word.apply(fam, x, x) - x)
    residual = abs(word.apply(fam, x, x) - x)
    if not a - tol <= x <= b + tol:
        return None, it, residual
    return x, it, residual


def _safeguarded_solve(fam: FamilySpec, word: Word, a: float, b: float,
                       tol: float, max_iter: int) -> tuple[float | None, int, float]:
    """Fixed-point iteration in c with a bisection safeguard on phi(c) = W_c(c) - c.

    The word map depends on c for from-f families, so plain iteration may
    diverge; a sign-change bracket is maintained and any iterate leaving it is
    replaced by the midpoint.
    """

    def phi(c: float) -> float:
        return word.apply(fam, c, c) - c

    lo, hi = fam.c_range
    fa = phi(a)
    fb = phi(b)
    # bracket ends come from parent solves carrying an error of order tol;
    # when the gap between tongues is comparable, the sign at an end can
    # flip, so nudge outward by small multiples of tol before giving up
    for widen in (tol, 10 * tol, 100 * tol, 1000 * tol):
        if fa > 0.0:
            break
        a2 = max(a - widen, lo)
        fa2 = phi(a2)
        if fa2 > 0.0:
            a, fa = a2, fa2
            break
    for widen in (tol, 10 * tol, 100 * tol, 1000 * tol):
        if fb < 0.0:
            break
        b2 = min(b + widen, hi)
        fb2 = phi(b2)
        if fb2 < 0.0:
            b, fb = b2, fb2
            break
    if fa == 0.0:
        return a, 1, 0.0
    if fb == 0.0:
        return b, 1, 0.0
    if not (fa > 0.0 > fb):
        return None, 1, max(abs(fa), abs(fb))
    x = 0.5 * (a + b)
    for it in range(1, max_iter + 1):
        w = word.apply(fam, x, x)
        fx = w - x
        res = abs(fx)
        if res <= tol:
            return x, it, res
        if fx > 0.0:
            a = x
        else:
            b = x
        nxt = w if a < w < b else 0.5 * (a + b)
        if nxt == x:
            # bracket exhausted at float resolution
            return (x, it, res) if res <= 100 * tol else (None, it, res)
        x = nxt
    return None, max_iter, abs(phi(x))


def solve_tongue(fam: FamilySpec, r: Rational, bracket: tuple[float, float],
                 tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER) -> TongueInterval | None:
    """Solve the two edge fixed points of one tongue inside ``bracket``.

    Returns None when the bracket is empty or the edge equations show no root
    there; raises :class:`NonOverlapError` when the solved edges come out
    reversed, which would contradict the family's non-overlap property.
    """
    if tol <= 0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    lo, hi = fam.c_range
    a = max(bracket[0], lo)
    b = min(bracket[1], hi)
    if not a < b:
        return None
    left, right = boundary_words(r)
    _check_non_overlap(fam, 0.5 * (a + b))
    if fam.kind == "from-g":
        cl, it_l, res_l = _banach_solve(fam, left, a, b, tol, max_iter)
        cr, it_r, res_r = _banach_solve(fam, right, a, b, tol, max_iter)
    else:
        cl, it_l, res_l = _safeguarded_solve(fam, left, a, b, tol, max_iter)
        cr, it_r, res_r = _safeguarded_solve(fam, right, a, b, tol, max_iter)
    if cl is None or cr is None:
        return None
    if not cl < cr:
        if cr - cl > -10 * tol:
            # edges coincide within solver accuracy: the tongue is narrower
            # than this tolerance can resolve
            return None
        raise NonOverlapError(
            f"tongue {r}: solved edges reversed (c_left = {cl!r} >= c_right = {cr!r})"
        )
    return TongueInterval(r, cl, cr, (a, b), it_l + it_r, (res_l, res_r))


def _bracket_for(node: SternBrocotNode, solved: dict[Fraction, TongueInterval],
                 c_range: tuple[float, float]) -> tuple[float, float] | None:
    """Nested bracket of a tree node from its solved parents.

    Rotation number decreases with c, so the larger-fraction parent bounds the
    bracket on the left through its right edge and the smaller-fraction parent
    on the right through its left edge; tree-edge parents fall back to the
    domain ends.
    """
    lo, hi = c_range
    if node.right == Fraction(1, 1):
        left_end = lo
    else:
        parent = solved.get(node.right)
        if parent is None:
            return None
        left_end = parent.c_right
    if node.left == Fraction(0, 1):
        right_end = hi
    else:
        parent = solved.get(node.left)
        if parent is None:
            return None
        right_end = parent.c_left
    return left_end, right_end


def farey_atlas(fam: FamilySpec, depth: int, tol: float = DEFAULT_TOL,
                failures: list[tuple[Rational, str]] | None = None) -> list[TongueInterval]:
    """Solve every tongue of the Stern-Brocot tree to ``depth``, sorted by c_left.

    Each mediant is bracketed by its parents' solved edges exactly as in the
    nested construction; per-tongue failures are recorded (and their subtrees
    skipped) without aborting the sweep.
    """
    solved: dict[Fraction, TongueInterval] = {}
    out: list[TongueInterval] = []
    for node in stern_brocot(depth):
        r = node.value
        bracket = _bracket_for(node, solved, fam.c_range)
        if bracket is None:
            if failures is not None:
                failures.append((r, "parent bracket unavailable"))
            continue
        try:
            res = solve_tongue(fam, r, bracket, tol)
        except NonOverlapError as exc:
            if failures is not None:
                failures.append((r, str(exc)))
            continue
        if res is None:
            if failures is not None:
                failures.append((r, "no root in bracket"))
            continue
        solved[r.fraction] = res
        out.append(res)
    return sorted(out, key=lambda t: t.c_left)


def solve_by_descent(fam: FamilySpec, r: Rational, tol: float = DEFAULT_TOL,
                     cache: dict[Fraction, TongueInterval] | None = None) -> TongueInterval | None:
    """Solve one target tongue by solving just its Stern-Brocot ancestors.

    ``cache`` may be shared across calls to reuse ancestor solves.
    """
    solved = cache if cache is not None else {}
    target = r.fraction
    lo_f, hi_f = Fraction(0, 1), Fraction(1, 1)
    c_lo, c_hi = fam.c_range
    while True:
        med = Fraction(lo_f.numerator + hi_f.numerator, lo_f.denominator + hi_f.denominator)
        node_r = Rational(med.denominator, med.numerator)
        if med not in solved:
            node = SternBrocotNode(node_r, lo_f, hi_f)
            bracket = _bracket_for(node, solved, (c_lo, c_hi))
            if bracket is None:
                return None
            res = solve_tongue(fam, node_r, bracket, tol)
            if res is None:
                return None
            solved[med] = res
        if med == target:
            return solved[med]
        if target < med:
            hi_f = med
        else:
            lo_f = med


def linear_crosscheck(alpha: float, r: Rational, tol: float = DEFAULT_TOL) -> float:
    """Deviation between the solved tongue of f(x) = alpha*x and the exact model.

    The from-f member at cut c equals the linear map with offset 1 - alpha*c,
    so the tongue edges must land on {(1 - B_U)/alpha, (1 - B_L)/alpha}.
    Returns the maximum absolute deviation of the two endpoint sets.
    """
    if not 0 < alpha < 1:
        raise ValueError(f"slope must lie in (0, 1), got {alpha}")
    fam = family_from_f(lambda x: alpha * x, kappa=alpha, name=f"linear-f({alpha})")
    solved = solve_by_descent(fam, r, tol)
    if solved is None:
        return float("inf")
    b_lo, b_up = region_boundaries(r, alpha)
    expected = sorted(((1.0 - b_up) / alpha, (1.0 - b_lo) / alpha))
    got = sorted((solved.c_left, solved.c_right))
    return max(abs(g - e) for g, e in zip(got, expected))
