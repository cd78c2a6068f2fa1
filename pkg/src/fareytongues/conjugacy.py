"""Numerical conjugacy between the linear model and a nonlinear locking map.

Two maps that lock with the same reduced rotation number l/n are conjugate: a
monotone homeomorphism H with target(H(x)) = H(S(x)) exists.  H is pinned on
the preimage chains of 0 (order-aligned), on the periodic points cell by cell,
and on the forward orbits of the gap; everywhere else the defining recursion
H = target o H o S^{-1} propagates a seed.  Concretely the closed value gap
[S(1), S(0)], which no forward image ever revisits, is split at the deepest
chain point, seeded with dense linear interpolants, and pushed forward through
both maps up to a truncation depth; the sampled graph is returned as a strictly
increasing knot list completed by interpolation near the periodic points.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .farey import Rational
from .linear_model import LinearParams, full_chain, periodic_points, region_contains
from .piecewise_map import PiecewiseMap, check_assumptions, detect_period


@dataclass(frozen=True, eq=False)
class ConjugacyMap:
    """Sampled monotone homeomorphism as matched knots (s_j, t_j).

    Abscissas live on the linear side, ordinates on the unit-normalized target
    side; between knots H interpolates linearly.  ``residual`` is the
    certificate produced by :func:`verify_conjugacy` at build time.
    """

    knots_s: np.ndarray
    knots_t: np.ndarray
    rational: Rational
    depth: int
    residual: float | None = None

    def __call__(self, x):
        return np.interp(x, self.knots_s, self.knots_t)


def _linear_step_array(p: LinearParams, xs: np.ndarray) -> np.ndarray:
    ys = p.alpha * xs + p.beta
    return np.where(ys >= 1.0, ys - 1.0, ys)


def build_homeomorphism(params: LinearParams, r: Rational, target: PiecewiseMap,
                        depth: int = 40, seed_samples: int = 1024,
                        verify_grid: int = 10_000) -> ConjugacyMap:
    """Construct the conjugating homeomorphism between S and ``target``.

    ``params`` must lie strictly inside the tongue of ``r`` and the target
    must pass the structural checks with the same (n, l).  The two seed pieces
    on the value gap are matched by a linear interpolant (the identity when
    source and target coincide), then pushed forward ``depth`` times; chain
    endpoints are kept exact along the way, and the piece ending at the cut is
    pushed with the upper-limit convention so its endpoint continues along the
    orbit of 1.
    """
    if depth < 1:
        raise ValueError(f"depth must be >= 1, got {depth}")
    if not region_contains(r, params):
        raise ValueError(f"parameters {params} not inside the tongue of {r}")
    tgt, _ = target.normalized()
    rep = check_assumptions(tgt, max_n=max(64, 4 * r.n))
    if not rep.ok:
        raise ValueError(f"target fails structural checks: {rep.failure}")
    if (rep.n, rep.l) != (r.n, r.l):
        raise ValueError(f"target locks at ({rep.n}, {rep.l}), expected ({r.n}, {r.l})")

    n = r.n
    alpha, beta = params.alpha, params.beta
    chain_s = [float(q) for q in full_chain(r, params)]
    chain_t = list(rep.chain)
    gap_s = (alpha + beta - 1.0, beta)           # (S(1), S(0))
    gap_t = tgt.gap
    deep_s, deep_t = chain_s[-1], chain_t[-1]

    orbit_t = detect_period(tgt, x0=0.0)
    if orbit_t is None or orbit_t.period != n:
        raise ValueError("target orbit detection disagrees with its chain structure")
    cycle_t = np.array(orbit_t.points)
    cycle_s = np.array(sorted(float(x) for x in periodic_points(r, params).points))

    def seed(a_s, b_s, a_t, b_t):
        s = np.linspace(a_s, b_s, seed_samples)
        t = a_t + (s - a_s) * (b_t - a_t) / (b_s - a_s)
        return s, t

    # Piece A ends at the deepest chain point and its endpoint walks the chain
    # down to the cut; piece B starts there and walks the chain down to 0.
    piece_a = seed(gap_s[0], deep_s, gap_t[0], deep_t)
    piece_b = seed(deep_s, gap_s[1], deep_t, gap_t[1])

    knots_s = [piece_a[0], piece_b[0], np.array([0.0, 1.0]), cycle_s]
    knots_t = [piece_a[1], piece_b[1], np.array([0.0, 1.0]), cycle_t]

    a_s, a_t = piece_a
    b_s, b_t = piece_b
    for k in range(1, depth + 1):
        if k == n - 1:
            # the endpoint of piece A has reached the cut: push its interior
            # through the upper branches and send the endpoint to the top
            a_s = np.append(_linear_step_array(params, a_s[:-1]), 1.0)
            a_t = np.append(tgt.eval_array(a_t[:-1]), 1.0)
        else:
            a_s = _linear_step_array(params, a_s)
            a_t = tgt.eval_array(a_t)
            if k < n - 1:
                a_s[-1] = chain_s[n - 1 - k]
                a_t[-1] = chain_t[n - 1 - k]
        b_s = _linear_step_array(params, b_s)
        b_t = tgt.eval_array(b_t)
        if k <= n - 1:
            b_s[0] = chain_s[n - 1 - k]
            b_t[0] = chain_t[n - 1 - k]
        knots_s.extend((a_s, b_s))
        knots_t.extend((a_t, b_t))

    s_all = np.concatenate(knots_s)
    t_all = np.concatenate(knots_t)
    order = np.argsort(s_all, kind="stable")
    s_all = s_all[order]
    t_all = t_all[order]

    keep_s = [s_all[0]]
    keep_t = [t_all[0]]
    for s, t in zip(s_all[1:], t_all[1:]):
        if s <= keep_s[-1] or t <= keep_t[-1]:
            if t < keep_t[-1] - 1e-9:
                raise ValueError(
                    f"non-monotone knot pair at s = {s!r}: t drops from {keep_t[-1]!r} to {t!r}"
                )
            continue
        keep_s.append(s)
        keep_t.append(t)

    cmap = ConjugacyMap(np.array(keep_s), np.array(keep_t), r, depth)
    residual = verify_conjugacy(cmap, params, target, grid=verify_grid)
    return ConjugacyMap(cmap.knots_s, cmap.knots_t, r, depth, residual)


def verify_conjugacy(h: ConjugacyMap, params: LinearParams, target: PiecewiseMap,
                     grid: int = 10_000) -> float:
    """Max conjugacy defect |target(H(x)) - H(S(x))| over an equispaced grid.

    Grid points within twice the largest knot spacing of the linear cut are
    excluded: there the two sides jump and interpolation error dominates.
    H must never decrease along the grid; float-collapsed knot regions may
    yield flat spots, which are tolerated.
    """
    tgt, _ = target.normalized()
    xs = np.linspace(0.0, 1.0, grid)
    hx = h(xs)
    dh = np.diff(hx)
    if np.any(dh < 0):
        raise ValueError("sampled homeomorphism decreases somewhere on the grid")
    cut_s = float((1.0 - params.beta) / params.alpha)
    width = 2.0 * float(np.max(np.diff(h.knots_s)))
    mask = np.abs(xs - cut_s) > width
    kept = xs[mask]
    lhs = tgt.eval_array(h(kept))
    rhs = h(_linear_step_array(params, kept))
    return float(np.max(np.abs(lhs - rhs)))
