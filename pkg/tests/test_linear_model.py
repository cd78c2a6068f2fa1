"""Linear-model tests: exact rational paths, simulation oracles, tongue ordering."""

from fractions import Fraction
from math import gcd

import pytest

from fareytongues.farey import Rational, stern_brocot
from fareytongues.linear_model import (NOT_FOUND, PERIOD_ONE, LinearParams,
                                       classify, full_chain, periodic_points,
                                       preimage_zero_chain, region_boundaries,
                                       region_contains, step)

HALF = Fraction(1, 2)
THREEQ = Fraction(3, 4)


def coprime_pairs(max_n):
    for n in range(2, max_n + 1):
        for l in range(1, n):
            if gcd(n, l) == 1:
                yield Rational(n, l)


def test_step_examples_exact():
    p = LinearParams(HALF, THREEQ)
    assert step(p, Fraction(1, 6)) == Fraction(5, 6)
    assert step(p, Fraction(5, 6)) == Fraction(1, 6)
    assert step(p, 0) == THREEQ
    with pytest.raises(ValueError):
        step(p, 1)
    with pytest.raises(ValueError):
        step(p, -0.1)


def test_step_exact_hit_wraps_to_zero():
    # alpha*x + beta = 1 exactly maps to 0
    p = LinearParams(HALF, THREEQ)
    assert step(p, HALF) == 0


def test_region_boundaries_examples():
    lo, up = region_boundaries(Rational(2, 1), HALF)
    assert (lo, up) == (Fraction(2, 3), Fraction(5, 6))

    lo, up = region_boundaries(Rational(3, 2), HALF)
    assert (lo, up) == (Fraction(6, 7), Fraction(13, 14))

    lo, up = region_boundaries(Rational(3, 1), 0.6)
    assert abs(lo - 0.5102) < 5e-5
    assert abs(up - 0.5837) < 5e-5


def test_region_boundaries_reject_bad_slope():
    with pytest.raises(ValueError):
        region_boundaries(Rational(2, 1), 1.0)
    with pytest.raises(ValueError):
        region_boundaries(Rational(2, 1), 0.0)


def test_region_contains_half_open():
    r = Rational(2, 1)
    assert region_contains(r, LinearParams(HALF, THREEQ))
    assert region_contains(r, LinearParams(HALF, Fraction(2, 3)))
    assert not region_contains(r, LinearParams(HALF, Fraction(5, 6)))


def test_classify_examples():
    assert classify(LinearParams(0.5, 0.75), max_n=10) == Rational(2, 1)
    assert classify(LinearParams(0.5, 0.4)) is PERIOD_ONE
    assert classify(LinearParams(0.6, 0.55), max_n=10) == Rational(3, 1)


def test_classify_boundary_parameter_not_found():
    # exact upper boundary of the (2,1) tongue belongs to no tongue
    assert classify(LinearParams(HALF, Fraction(5, 6)), max_n=40) is NOT_FOUND


def test_classify_midpoint_identity():
    for alpha in (Fraction(3, 10), HALF, Fraction(7, 10)):
        for r in coprime_pairs(20):
            lo, up = region_boundaries(r, alpha)
            assert classify(LinearParams(alpha, (lo + up) / 2), max_n=20) == r


def test_periodic_points_exact():
    orb = periodic_points(Rational(2, 1), LinearParams(HALF, THREEQ))
    assert orb.coefficients == (Fraction(4, 3), Fraction(2, 3))
    assert orb.points == (Fraction(1, 6), Fraction(5, 6))


def test_periodic_points_membership_required():
    with pytest.raises(ValueError):
        periodic_points(Rational(2, 1), LinearParams(0.5, 0.5))


def test_periodic_points_iteration_order():
    # applying the map walks the tuple cyclically, for several tongues
    for r, alpha in ((Rational(3, 1), Fraction(3, 5)), (Rational(5, 2), HALF),
                     (Rational(7, 3), Fraction(2, 3))):
        lo, up = region_boundaries(r, alpha)
        p = LinearParams(alpha, (lo + up) / 2)
        orb = periodic_points(r, p)
        for i, x in enumerate(orb.points):
            assert step(p, x) == orb.points[(i + 1) % r.n]


def test_periodic_points_simulation_oracle():
    r = Rational(3, 1)
    p = LinearParams(0.6, 0.55)
    orb = periodic_points(r, p)
    x = 0.0
    for _ in range(2000):
        x = step(p, x)
    seen = sorted(orb.points)
    for _ in range(3):
        x = step(p, x)
        assert min(abs(x - q) for q in seen) < 1e-12


def test_chain_example_exact():
    ch = preimage_zero_chain(Rational(2, 1), LinearParams(HALF, THREEQ))
    assert ch.points == (HALF,)
    assert ch.beyond == Fraction(-1, 2)
    # the single chain point is the discontinuity
    assert ch.points[0] == LinearParams(HALF, THREEQ).cut


def test_chain_forward_consistency():
    r = Rational(3, 1)
    p = LinearParams(0.6, 0.55)
    ch = preimage_zero_chain(r, p)
    assert len(ch.points) == 2
    assert abs(step(p, ch.points[0]) - 0.0) < 1e-12
    assert abs(step(p, ch.points[1]) - ch.points[0]) < 1e-12
    assert not 0 <= ch.beyond <= 1


def test_chain_interleaves_periodic_points():
    # one periodic point strictly inside each cell cut by the chain
    for r, alpha in ((Rational(5, 2), HALF), (Rational(7, 2), Fraction(3, 5)),
                     (Rational(9, 2), Fraction(7, 10))):
        lo, up = region_boundaries(r, alpha)
        p = LinearParams(alpha, (lo + up) / 2)
        cells = sorted(full_chain(r, p)[1:])
        pts = sorted(periodic_points(r, p).points)
        bounds = [Fraction(0)] + cells + [Fraction(1)]
        for low, high, x in zip(bounds[:-1], bounds[1:], pts):
            assert low < x < high


def test_tongue_ordering_and_mediant_between():
    # deep neighbouring tongues separate by less than a float ulp, so the
    # ordering is checked on the exact rational path
    for alpha in (Fraction(3, 10), HALF, Fraction(7, 10)):
        tree = stern_brocot(6)
        regions = {nd.value.fraction: region_boundaries(nd.value, alpha) for nd in tree}
        items = sorted(regions.items())
        for (f1, (lo1, up1)), (f2, (lo2, up2)) in zip(items[:-1], items[1:]):
            assert up1 <= lo2, (f1, f2)
        for nd in tree:
            lo, up = regions[nd.value.fraction]
            if nd.left.denominator > 1 and nd.left in regions:
                assert regions[nd.left][1] <= lo
            if nd.right.denominator > 1 and nd.right in regions:
                assert up <= regions[nd.right][0]
