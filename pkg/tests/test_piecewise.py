"""Engine tests: evaluation, preimages, structural checks, orbits, chain order."""

from fractions import Fraction
from math import gcd

import pytest

from fareytongues.farey import Rational, char_seq
from fareytongues.linear_model import LinearParams, region_boundaries
from fareytongues.piecewise_map import (PiecewiseMap, check_assumptions,
                                        detect_period, from_linear,
                                        preimage_order)
from fareytongues.families import quadratic_family, sweep_map


def midpoint_params(r, alpha):
    lo, up = region_boundaries(r, Fraction(alpha))
    return LinearParams(float(Fraction(alpha)), float((lo + up) / 2))


QUAD = sweep_map("quadratic", 0.4, 0.5)
WRAP = from_linear(0.5, 0.75)


def test_eval_examples():
    assert WRAP.eval(1 / 6) == pytest.approx(5 / 6, abs=1e-15)
    assert QUAD.eval(0.0) == pytest.approx(0.9, abs=1e-15)
    assert QUAD.eval(QUAD.cut) == QUAD.lower(QUAD.cut)
    with pytest.raises(ValueError):
        WRAP.eval(1.5)


def test_eval_cut_goes_low():
    # x = cut is assigned to the lower branch
    assert WRAP.eval(WRAP.cut) == pytest.approx(0.0, abs=1e-15)


def test_construction_rejects_bad_cut():
    with pytest.raises(ValueError):
        PiecewiseMap(0.0, 1.0, 1.5, lambda x: x, lambda x: x)
    with pytest.raises(ValueError):
        from_linear(0.5, 0.4)


def test_preimage_examples():
    assert WRAP.preimage(0.0) == pytest.approx(0.5, abs=1e-12)
    assert WRAP.preimage(0.5) is None  # inside the gap (0.25, 0.75)
    with pytest.raises(ValueError):
        WRAP.preimage(0.1, tol=0.0)


def test_preimage_round_trip():
    for k in range(100):
        x = 0.005 + 0.99 * k / 99
        y = WRAP.eval(x)
        back = WRAP.preimage(y)
        assert back is not None
        assert abs(back - x) < 1e-9


def test_preimage_gap_edges():
    f_hi, f_lo = WRAP.gap
    assert WRAP.preimage(f_hi) == pytest.approx(1.0, abs=1e-11)
    assert WRAP.preimage(f_lo) == pytest.approx(0.0, abs=1e-11)
    assert WRAP.preimage(0.5 * (f_hi + f_lo)) is None


def test_check_assumptions_examples():
    rep = check_assumptions(WRAP)
    assert rep.ok and (rep.n, rep.l) == (2, 1)
    assert rep.chain == (0.0, 0.5)

    rep = check_assumptions(from_linear(0.6, 0.55))
    assert rep.ok and (rep.n, rep.l) == (3, 1)

    rep = check_assumptions(QUAD)
    assert rep.ok and (rep.n, rep.l) == (2, 1)
    assert rep.chain[1] == QUAD.cut


def test_check_assumptions_chain_matches_formula():
    from fareytongues.linear_model import full_chain

    r = Rational(5, 2)
    p = midpoint_params(r, Fraction(11, 20))
    m = from_linear(p.alpha, p.beta)
    rep = check_assumptions(m)
    assert (rep.n, rep.l) == (5, 2)
    exact = [float(q) for q in full_chain(r, LinearParams(Fraction(p.alpha), Fraction(p.beta)))]
    assert max(abs(a - b) for a, b in zip(rep.chain, exact)) < 1e-10


def test_check_assumptions_gcd_always_one():
    for r, alpha in ((Rational(4, 1), Fraction(1, 2)), (Rational(5, 3), Fraction(2, 5)),
                     (Rational(7, 4), Fraction(1, 2)), (Rational(9, 2), Fraction(4, 5))):
        p = midpoint_params(r, alpha)
        rep = check_assumptions(from_linear(p.alpha, p.beta))
        assert rep.ok
        assert gcd(rep.n, rep.l) == 1
        assert (rep.n, rep.l) == (r.n, r.l)


def test_detect_period_linear_example():
    s = detect_period(WRAP, 0.3)
    assert s.period == 2
    assert s.points == pytest.approx((1 / 6, 5 / 6), abs=1e-12)
    assert s.rotation == Fraction(1, 2)
    assert s.itinerary in ((0, 1), (1, 0))
    assert s.residual < 1e-12


def quadratic_cycle_oracle():
    # plain forward iteration, independent of the detector
    x = 0.0
    for _ in range(10000):
        x = 0.4 * x * x + (0.9 if x < 0.5 else -0.1)
    a = x
    b = 0.4 * a * a + (0.9 if a < 0.5 else -0.1)
    return tuple(sorted((a, b)))


def test_detect_period_quadratic_example():
    expected = quadratic_cycle_oracle()
    # frozen from the oracle above
    assert expected == pytest.approx((0.2409338003332196, 0.9232196384572031), abs=1e-12)
    s = detect_period(QUAD, 0.0)
    assert s.period == 2
    assert s.points == pytest.approx(expected, abs=1e-12)
    assert s.rotation == Fraction(1, 2)


def test_detect_period_fixed_point():
    # a map violating the endpoint limits can still carry an attracting fixed point
    m = PiecewiseMap(0.0, 1.0, 0.2,
                     lambda x: 0.5 * x + 0.9, lambda x: 0.5 * x + 0.3, kappa=0.5)
    s = detect_period(m, 0.0)
    assert s.period == 1
    assert s.points[0] == pytest.approx(0.6, abs=1e-12)
    assert s.rotation == Fraction(1, 1)


def test_detect_period_transient_and_budget():
    s = detect_period(WRAP, 0.3, tol=1e-9)
    assert 0 <= s.transient < 100
    # tiny budget cannot see the period
    m = from_linear(0.55, 0.9)
    assert detect_period(m, 0.0, max_iter=3, max_period=1000) is None


def test_detect_rotation_matches_chain():
    for r, alpha in ((Rational(5, 3), Fraction(2, 5)), (Rational(7, 2), Fraction(3, 5)),
                     (Rational(8, 3), Fraction(1, 2))):
        p = midpoint_params(r, alpha)
        m = from_linear(p.alpha, p.beta)
        rep = check_assumptions(m)
        s = detect_period(m, 0.0)
        assert s.period == rep.n == r.n
        assert s.rotation == Fraction(rep.l, rep.n)


def test_preimage_order_boundary_case():
    order = preimage_order(WRAP)
    assert order.xs == (0.0,)
    assert order.ys == (0.5,)
    assert order.rho == (0, 1)
    assert order.case == "n=2l"


def test_preimage_order_n_greater_2l():
    # period 9 with 2 wraps: relations of the n > 2l table
    r = Rational(9, 2)
    p = midpoint_params(r, Fraction(4, 5))
    m = from_linear(p.alpha, p.beta)
    rep = check_assumptions(m, max_n=16)
    assert (rep.n, rep.l) == (9, 2)
    order = preimage_order(m, rep)
    assert order.case == "n>2l"
    xs, ys = order.xs, order.ys
    assert len(xs) == 7 and len(ys) == 2

    def inv(q):
        return m.preimage(q)

    for i in (1, 2):
        assert abs(inv(xs[i - 1]) - ys[i - 1]) < 1e-9
    assert inv(xs[2]) is None
    for i in (4, 5, 6, 7):
        assert abs(inv(xs[i - 1]) - xs[i - 2 - 1]) < 1e-9
    for i in (1, 2):
        assert abs(inv(ys[i - 1]) - xs[9 - 4 + i - 1]) < 1e-9


def test_preimage_order_n_less_2l():
    # period 5 with 3 wraps: mirrored relations
    r = Rational(5, 3)
    p = midpoint_params(r, Fraction(1, 2))
    m = from_linear(p.alpha, p.beta)
    rep = check_assumptions(m)
    assert (rep.n, rep.l) == (5, 3)
    order = preimage_order(m, rep)
    assert order.case == "n<2l"
    xs, ys = order.xs, order.ys
    assert len(xs) == 2 and len(ys) == 3

    def inv(q):
        return m.preimage(q)

    for i in (1, 2):
        assert abs(inv(xs[i - 1]) - ys[i - 1]) < 1e-9
    assert abs(inv(ys[0]) - ys[2]) < 1e-9
    assert inv(ys[1]) is None
    assert abs(inv(ys[2]) - xs[1]) < 1e-9


def test_preimage_order_correspondence_across_maps():
    # equal (n, l) forces equal chain orderings, linear vs nonlinear
    from fareytongues.tongue_solver import solve_by_descent

    fam = quadratic_family(0.4)
    t = solve_by_descent(fam, Rational(3, 1))
    quad = fam.map_at(0.5 * (t.c_left + t.c_right))
    rep_q = check_assumptions(quad)
    assert (rep_q.n, rep_q.l) == (3, 1)

    lin = from_linear(0.6, 0.55)
    rep_l = check_assumptions(lin)
    assert preimage_order(quad, rep_q).rho == preimage_order(lin, rep_l).rho


def test_orbit_points_interleave_chain():
    for r, alpha in ((Rational(5, 2), Fraction(1, 2)), (Rational(9, 2), Fraction(4, 5))):
        p = midpoint_params(r, alpha)
        m = from_linear(p.alpha, p.beta)
        rep = check_assumptions(m, max_n=16)
        s = detect_period(m, 0.0)
        cells = sorted(rep.chain[1:])
        bounds = [0.0] + cells + [1.0]
        for low, high, x in zip(bounds[:-1], bounds[1:], s.points):
            assert low < x < high


def test_itinerary_is_cyclic_shift_of_char_seq():
    for r, alpha in ((Rational(5, 2), Fraction(1, 2)), (Rational(7, 3), Fraction(3, 5))):
        p = midpoint_params(r, alpha)
        m = from_linear(p.alpha, p.beta)
        s = detect_period(m, 0.0)
        bits = char_seq(r).bits
        shifts = {tuple(bits[(j + sh) % r.n] for j in range(r.n)) for sh in range(r.n)}
        assert s.itinerary in shifts
