"""Two-branch monotone increasing interval maps with one jump.

The engine accepts arbitrary user-supplied branch callables and provides
evaluation, unique preimages by bisection, structural checks (non-overlap,
endpoint limits, monotonicity, finite preimage chain of the bottom endpoint),
brute-force orbit/period/rotation detection, and the combinatorial ordering of
the preimage chain.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Callable

import numpy as np

DEFAULT_BISECT_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class PiecewiseMap:
    """Monotone two-branch map on [lo, hi] with a single jump at ``cut``.

    ``upper`` is applied strictly below the cut and climbs to the top of the
    domain there; ``lower`` is applied at and above the cut and starts at the
    bottom.  ``kappa`` is a declared Lipschitz bound for both branches
    (1.0 means unknown).  Branch callables should also accept numpy arrays;
    array evaluation falls back to a scalar loop otherwise.
    """

    lo: float
    hi: float
    cut: float
    upper: Callable
    lower: Callable
    kappa: float = 1.0
    name: str = ""

    def __post_init__(self) -> None:
        if not self.lo < self.cut < self.hi:
            raise ValueError(f"cut {self.cut} must lie strictly inside [{self.lo}, {self.hi}]")
        if not 0 < self.kappa <= 1:
            raise ValueError(f"declared contraction bound must lie in (0, 1], got {self.kappa}")

    def __call__(self, x: float) -> float:
        return self.eval(x)

    def eval(self, x: float) -> float:
        """Branch-selected value; x = cut goes to the lower branch."""
        if not self.lo <= x <= self.hi:
            raise ValueError(f"point {x} outside domain [{self.lo}, {self.hi}]")
        return self.upper(x) if x < self.cut else self.lower(x)

    def eval_array(self, xs: np.ndarray) -> np.ndarray:
        """Vector evaluation; both branches are evaluated on the whole array."""
        xs = np.asarray(xs, dtype=float)
        try:
            return np.where(xs < self.cut, self.upper(xs), self.lower(xs))
        except (TypeError, ValueError):
            return np.array([self.eval(float(x)) for x in xs.ravel()]).reshape(xs.shape)

    @property
    def gap(self) -> tuple[float, float]:
        """Never-hit value interval (lower(hi), upper(lo)); open at both ends."""
        return self.lower(self.hi), self.upper(self.lo)

    def preimage(self, y: float, tol: float = DEFAULT_BISECT_TOL) -> float | None:
        """Unique preimage of ``y``, or None when y lies in the gap.

        The branch whose range contains y is inverted by bisection to within
        ``tol`` on x.  Non-overlap plus the endpoint limits make the branch
        choice unambiguous.
        """
        if tol <= 0:
            raise ValueError(f"tolerance must be positive, got {tol}")
        if not self.lo <= y <= self.hi:
            raise ValueError(f"value {y} outside domain [{self.lo}, {self.hi}]")
        f_hi, f_lo = self.gap
        if f_hi < y < f_lo:
            return None
        if y == self.lo:
            return self.cut
        if y <= f_hi:
            branch, a, b = self.lower, self.cut, self.hi
        else:
            branch, a, b = self.upper, self.lo, self.cut
        while b - a > tol:
            mid = 0.5 * (a + b)
            if branch(mid) < y:
                a = mid
            else:
                b = mid
        return 0.5 * (a + b)

    def normalized(self) -> tuple["PiecewiseMap", tuple[float, float]]:
        """Affine copy on [0, 1] plus the (offset, width) of the rescaling."""
        lo, w = self.lo, self.hi - self.lo
        if lo == 0.0 and w == 1.0:
            return self, (0.0, 1.0)
        upper, lower = self.upper, self.lower

        def up(u):
            return (upper(lo + u * w) - lo) / w

        def down(u):
            return (lower(lo + u * w) - lo) / w

        norm = PiecewiseMap(0.0, 1.0, (self.cut - lo) / w, up, down, self.kappa,
                            name=self.name + "|unit" if self.name else "")
        return norm, (lo, w)


def from_linear(alpha: float, beta: float) -> PiecewiseMap:
    """Linear model alpha*x + beta (mod 1) as a piecewise map on [0, 1].

    Requires alpha + beta > 1 so the cut (1 - beta)/alpha is interior.
    """
    if not (0 < alpha < 1 and 0 < beta < 1):
        raise ValueError(f"parameters ({alpha}, {beta}) outside (0, 1)^2")
    if alpha + beta <= 1:
        raise ValueError("alpha + beta <= 1: the map has no discontinuity in [0, 1)")
    cut = (1 - beta) / alpha

    def upper(x):
        return alpha * x + beta

    def lower(x):
        return alpha * x + beta - 1

    return PiecewiseMap(0.0, 1.0, cut, upper, lower, kappa=alpha,
                        name=f"linear({alpha},{beta})")


@dataclass(frozen=True)
class AssumptionReport:
    """Outcome of the structural checks, with witnesses.

    ``chain`` holds the discovered preimages of the bottom endpoint starting
    at the endpoint itself; when the chain terminates, ``n`` is its length and
    ``l`` counts chain points at or above the cut.
    """

    a1: bool
    a1_witness: tuple[float, float]
    a2: bool
    a2_witness: tuple[float, float]
    a3: bool
    a3_witness: tuple[float, float] | None
    a4: bool
    n: int | None
    l: int | None
    chain: tuple[float, ...]
    failure: str | None = None

    @property
    def ok(self) -> bool:
        return self.a1 and self.a2 and self.a3 and self.a4


def check_assumptions(m: PiecewiseMap, max_n: int = 64, grid: int = 1024,
                      eps: float = 1e-9, tol: float = DEFAULT_BISECT_TOL) -> AssumptionReport:
    """Verify non-overlap, endpoint limits, monotonicity, and a finite chain.

    The chain is produced by iterating ``preimage`` from the bottom endpoint
    until it dies in the gap; the first preimage is the cut exactly.  A chain
    longer than ``max_n`` or a non-coprime (n, l) fails the last check.
    """
    if max_n < 2:
        raise ValueError(f"max_n must be >= 2, got {max_n}")
    span = m.hi - m.lo
    try:
        f_lo = m.upper(m.lo)
        f_hi = m.lower(m.hi)
        top = m.upper(m.cut)
        bottom = m.lower(m.cut)
    except Exception as exc:  # noqa: BLE001 - surface the offending point
        raise ValueError(f"branch evaluation failed at a domain endpoint: {exc}") from exc

    a1 = f_lo > f_hi
    a2 = abs(top - m.hi) <= eps * span and abs(bottom - m.lo) <= eps * span
    a2_witness = (top - m.hi, bottom - m.lo)

    a3 = True
    a3_witness = None
    for branch, a, b in ((m.upper, m.lo, m.cut), (m.lower, m.cut, m.hi)):
        xs = np.linspace(a, b, grid)
        try:
            vals = branch(xs)
            vals = np.asarray(vals, dtype=float)
            if vals.shape != xs.shape:
                raise TypeError
        except (TypeError, ValueError):
            vals = np.array([branch(float(x)) for x in xs])
        bad = np.nonzero(np.diff(vals) <= 0)[0]
        if bad.size:
            a3 = False
            a3_witness = (float(xs[bad[0]]), float(xs[bad[0] + 1]))
            break

    chain: list[float] = [m.lo]
    a4 = False
    n = None
    l = None
    failure = None
    if a1 and a2 and a3:
        chain.append(m.cut)
        while True:
            nxt = m.preimage(chain[-1], tol=tol)
            if nxt is None:
                break
            if abs(nxt - m.cut) <= 10 * tol:
                nxt = m.cut
            chain.append(nxt)
            if len(chain) > max_n:
                failure = f"no empty preimage within max_n = {max_n} steps"
                break
        if failure is None:
            n = len(chain)
            l = sum(1 for q in chain if q >= m.cut)
            if gcd(n, l) != 1:
                failure = f"chain gave non-coprime (n, l) = ({n}, {l})"
                n = None
                l = None
            else:
                a4 = True
    else:
        failure = "structural checks failed before the chain"
    return AssumptionReport(a1, (f_lo, f_hi), a2, a2_witness, a3, a3_witness,
                            a4, n, l, tuple(chain), failure)


@dataclass(frozen=True)
class OrbitSummary:
    """Detected attracting cycle.

    ``points`` are sorted ascending; ``itinerary`` starts at the smallest
    point, bit 1 meaning the step was taken at or above the cut (the wrapping
    branch), so the bit sum over one period is the wrap count.
    """

    period: int
    points: tuple[float, ...]
    itinerary: tuple[int, ...]
    rotation: Fraction
    transient: int
    residual: float


def detect_period(m: PiecewiseMap, x0: float, tol: float = 1e-9,
                  max_iter: int = 20000, burn_in: int = 10000,
                  max_period: int = 1000, refine_tol: float = 1e-14) -> OrbitSummary | None:
    """Brute-force orbit detector with burn-in and branch-word refinement.

    After burn-in the smallest p with |x_{k+p} - x_k| < tol and a p-periodic
    branch itinerary over the whole recorded window is taken as the period.
    The cycle is then polished by iterating the frozen branch word to
    ``refine_tol``.  Returns None when no recurrence shows up within budget
    (period beyond reach, or a boundary parameter).
    """
    if not m.lo <= x0 <= m.hi:
        raise ValueError(f"start point {x0} outside domain [{m.lo}, {m.hi}]")
    window = min(2 * max_period + 2, max(2, max_iter))
    burn = min(burn_in, max(0, max_iter - window))
    upper, lower, cut = m.upper, m.lower, m.cut

    x = x0
    for _ in range(burn):
        x = upper(x) if x < cut else lower(x)

    xs = [x]
    bits = [1 if x >= cut else 0]
    for _ in range(window - 1):
        x = upper(x) if x < cut else lower(x)
        xs.append(x)
        bits.append(1 if x >= cut else 0)

    period = None
    for p in range(1, min(max_period, window - 1) + 1):
        if abs(xs[p] - xs[0]) >= tol:
            continue
        if all(bits[j + p] == bits[j] for j in range(window - p)):
            period = p
            break
    if period is None:
        return None

    word = bits[:period]

    def word_map(z: float) -> float:
        for b in word:
            z = lower(z) if b else upper(z)
        return z

    z = xs[0]
    for _ in range(500):
        z2 = word_map(z)
        if abs(z2 - z) <= refine_tol:
            z = z2
            break
        z = z2

    cycle = [z]
    for _ in range(period - 1):
        cycle.append(m.eval(cycle[-1]))
    ahead = list(cycle)
    cur = cycle[-1]
    for _ in range(period):
        cur = m.eval(cur)
        ahead.append(cur)
    residual = max(abs(ahead[j + period] - ahead[j]) for j in range(period))

    start = min(range(period), key=lambda j: cycle[j])
    itinerary = tuple(1 if cycle[(start + j) % period] >= cut else 0 for j in range(period))
    rotation = Fraction(sum(itinerary), period)

    pts = sorted(cycle)
    transient = 0
    x = x0
    limit = burn + window
    while min(abs(x - q) for q in pts) >= tol:
        x = upper(x) if x < cut else lower(x)
        transient += 1
        if transient > limit:
            break
    return OrbitSummary(period, tuple(pts), itinerary, rotation, transient, residual)


@dataclass(frozen=True)
class PreimageOrder:
    """Sorted labelling of the preimage chain and its successor structure.

    ``rho[r]`` is the chain index of the r-th smallest chain point.  Chain
    points below the cut are x_1 < ... < x_{n-l}, those at or above it are
    y_1 < ... < y_l, and the verified successor rule is: the i-th smallest
    chain point is sent by the inverse map to y_i for i <= l, dies for
    i = l + 1, and goes to x_{i-l} for i >= l + 2.
    """

    rho: tuple[int, ...]
    xs: tuple[float, ...]
    ys: tuple[float, ...]
    case: str


def preimage_order(m: PiecewiseMap, report: AssumptionReport | None = None,
                   max_n: int = 64) -> PreimageOrder:
    """Order the preimage chain and verify the orbit relations.

    Requires a passing :func:`check_assumptions` (run here when no report is
    supplied).  A violated relation raises, naming the failing rank, since it
    would falsify the structural detection.
    """
    if report is None:
        report = check_assumptions(m, max_n=max_n)
    if not report.ok:
        raise ValueError(f"assumption checks failed: {report.failure}")
    chain = report.chain
    n, l = report.n, report.l
    rho = tuple(sorted(range(n), key=lambda j: chain[j]))
    xs = tuple(q for q in sorted(chain) if q < m.cut)
    ys = tuple(q for q in sorted(chain) if q >= m.cut)
    if len(xs) != n - l or len(ys) != l:
        raise ValueError(f"chain split ({len(xs)}, {len(ys)}) disagrees with (n-l, l) = ({n - l}, {l})")

    # Successor of chain index j under the inverse map is index j+1; index
    # n-1 dies in the gap.  Verify against the sorted-rank rule.
    for rank, j in enumerate(rho, start=1):
        if rank <= l:
            expected = chain.index(ys[rank - 1])
        elif rank == l + 1:
            expected = None
        else:
            expected = chain.index(xs[rank - l - 1])
        actual = j + 1 if j + 1 < n else None
        if expected != actual:
            raise ValueError(
                f"orbit relation violated at rank {rank}: inverse of chain[{j}] "
                f"is chain[{actual}], expected chain[{expected}]"
            )
    if n > 2 * l:
        case = "n>2l"
    elif n < 2 * l:
        case = "n<2l"
    else:
        case = "n=2l"
    return PreimageOrder(rho, xs, ys, case)
