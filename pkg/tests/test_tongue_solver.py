"""Solver tests: words, fixed points, atlases, orderings, crosschecks."""

from fractions import Fraction

import pytest

from fareytongues.farey import Rational, stern_brocot
from fareytongues.families import linear_f_family, quadratic_family, sine_family
from fareytongues.linear_model import region_boundaries
from fareytongues.piecewise_map import detect_period
from fareytongues.tongue_solver import (FamilyError, boundary_words,
                                        family_from_f, family_from_g,
                                        farey_atlas, linear_crosscheck,
                                        solve_by_descent, solve_tongue)

SINE = sine_family(2.0)


def test_boundary_words_examples():
    left, right = boundary_words(Rational(2, 1))
    assert left.symbols == "gh" and right.symbols == "hg"

    left, right = boundary_words(Rational(3, 2))
    assert left.symbols == "ggh" and right.symbols == "ghg"

    left, right = boundary_words(Rational(5, 2))
    assert left.symbols == "hghgh" and right.symbols == "hghhg"


def test_word_application_order():
    # rightmost factor first: for (3,2) the left word is g(g(h(x)))
    fam = linear_f_family(0.5)
    left, _ = boundary_words(Rational(3, 2))
    c = 0.3
    g, h = fam.branches(c)
    assert left.apply(fam, c, c) == pytest.approx(g(g(h(c))), abs=1e-15)


def test_solve_linear_hand_value():
    fam = linear_f_family(0.5)
    t = solve_tongue(fam, Rational(2, 1), (0.0, 1.0))
    assert sorted((t.c_left, t.c_right)) == pytest.approx([1 / 3, 2 / 3], abs=1e-8)
    assert t.iterations > 0
    assert max(t.residuals) <= 1e-10


def test_solve_degenerate_bracket():
    fam = linear_f_family(0.5)
    assert solve_tongue(fam, Rational(2, 1), (0.4, 0.4)) is None


def test_solve_no_sign_change():
    fam = linear_f_family(0.5)
    assert solve_tongue(fam, Rational(2, 1), (0.9, 0.95)) is None


def test_solve_sine_root_tongue():
    t = solve_tongue(SINE, Rational(2, 1), SINE.c_range)
    assert t is not None and t.c_left < t.c_right
    assert max(t.residuals) <= 1e-10
    mid = 0.5 * (t.c_left + t.c_right)
    s = detect_period(SINE.map_at(mid), SINE.map_at(mid).lo)
    assert s is not None and s.period == 2 and s.rotation == Fraction(1, 2)


def test_banach_residual_decreases():
    # word-map iteration residual shrinks monotonically after the first step
    left, _ = boundary_words(Rational(3, 1))
    x = 1.5
    residuals = []
    for _ in range(25):
        x2 = left.apply(SINE, x, x)
        residuals.append(abs(x2 - x))
        x = x2
        if residuals[-1] == 0.0:
            break
    assert len(residuals) > 5
    assert all(b < a for a, b in zip(residuals[1:-1], residuals[2:]))


def test_non_overlap_identity():
    for c in (0.2, 0.8, 1.3, 1.9):
        g, h = SINE.branches(c)
        assert h(g(c)) > g(h(c))
    fam = quadratic_family(0.4)
    for c in (0.1, 0.5, 0.9):
        g, h = fam.branches(c)
        assert h(g(c)) > g(h(c))


def test_farey_atlas_depth1_and_2_linear():
    fam = linear_f_family(0.5)
    only = farey_atlas(fam, 1)
    assert [t.rational for t in only] == [Rational(2, 1)]

    three = farey_atlas(fam, 2)
    assert len(three) == 3
    # sorted by c_left means decreasing rotation number
    rotations = [t.rational.fraction for t in three]
    assert rotations == sorted(rotations, reverse=True)
    for a, b in zip(three[:-1], three[1:]):
        assert a.c_right < b.c_left


def test_farey_atlas_sine_depth3():
    tongues = farey_atlas(SINE, 3)
    assert len(tongues) == 7
    for a, b in zip(tongues[:-1], tongues[1:]):
        assert a.c_right < b.c_left
    by_frac = {t.rational.fraction: t for t in tongues}
    for node in stern_brocot(3):
        med = by_frac[node.value.fraction]
        if node.right.denominator > 1:
            high = by_frac[node.right]
            assert high.c_right < med.c_left
        if node.left.denominator > 1:
            low = by_frac[node.left]
            assert med.c_right < low.c_left


def test_farey_ordering_margin_shallow():
    # strict ordering with a healthy margin while tongue scales allow it
    tol = 1e-10
    tongues = {t.rational.fraction: t for t in farey_atlas(SINE, 5, tol=tol)}
    assert len(tongues) == 31
    for node in stern_brocot(5):
        med = tongues[node.value.fraction]
        if node.right.denominator > 1:
            assert med.c_left - tongues[node.right].c_right > 10 * tol
        if node.left.denominator > 1:
            assert tongues[node.left].c_left - med.c_right > 10 * tol


def test_word_rewriting_identity():
    # mediant left word = higher-rotation parent's right word followed by the
    # lower-rotation parent's left word, as plain symbol strings
    for node in stern_brocot(6):
        if node.left.denominator == 1 or node.right.denominator == 1:
            continue
        med_left, med_right = boundary_words(node.value)
        hi = Rational(node.right.denominator, node.right.numerator)
        lo = Rational(node.left.denominator, node.left.numerator)
        _, hi_right = boundary_words(hi)
        lo_left, lo_right = boundary_words(lo)
        assert med_left.symbols == hi_right.symbols + lo_left.symbols
        assert med_right.symbols == hi_right.symbols + lo_right.symbols


def test_linear_crosscheck_examples():
    assert linear_crosscheck(0.5, Rational(2, 1)) <= 1e-8
    assert linear_crosscheck(0.6, Rational(3, 1)) <= 1e-8
    assert linear_crosscheck(0.5, Rational(3, 2)) <= 1e-8


def test_crosscheck_endpoints_against_formula():
    alpha = 0.6
    fam = linear_f_family(alpha)
    t = solve_by_descent(fam, Rational(3, 1))
    lo, up = region_boundaries(Rational(3, 1), alpha)
    assert t.c_left == pytest.approx((1 - up) / alpha, abs=1e-8)
    assert t.c_right == pytest.approx((1 - lo) / alpha, abs=1e-8)


def test_family_validation():
    with pytest.raises(FamilyError):
        family_from_f(lambda x: 0.5 * x + 0.1, kappa=0.5)  # f(0) != 0
    with pytest.raises(FamilyError):
        family_from_f(lambda x: x, kappa=1.0)  # not a contraction
    with pytest.raises(FamilyError):
        family_from_f(lambda x: 0.9 * x, kappa=0.5)  # slope above declared bound
    with pytest.raises(FamilyError):
        quadratic_family(0.6)
    with pytest.raises(FamilyError):
        family_from_g(lambda x: 0.5 * x + 0.2, kappa=0.5)  # g(0) != 0


def test_family_from_g_solves_c_star():
    fam = family_from_g(lambda x: 0.5 * x, kappa=0.5)
    assert fam.c_star == pytest.approx(2.0, abs=1e-12)


def test_sine_c_star_is_exact_fixed_point():
    g = SINE.base
    assert g(2.0) + 1.0 == pytest.approx(2.0, abs=1e-12)


def test_solver_family_map_roundtrip():
    m = SINE.map_at(1.0)
    assert m.lo == pytest.approx(SINE.base(1.0))
    assert m.hi == pytest.approx(SINE.base(1.0) + 1.0)
    with pytest.raises(FamilyError):
        SINE.map_at(2.5)  # beyond c*
