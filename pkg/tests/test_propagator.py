import random
import time
from fractions import Fraction

import pytest

from fpfactor.errors import DomainError
from fpfactor.exact import INF, interval
from fpfactor.floats import BINARY64, FloatFormat, FloatInterval
from fpfactor.oracle import get_oracle, oracle_solve
from fpfactor.propagator import (ALL_REALS, QuotientSet, float_hull, quotient_relaxation, quotient_set,
                                 solve_mul_constraint, tighten_factor_bounds, tighten_product_bounds)
from fpfactor.rounding import Rounding

from conftest import DECIMAL, REGULAR, TINY, fi, fv, fmt_id

F = Fraction
RD, RU, RNE = Rounding.RD, Rounding.RU, Rounding.RNE


def test_quotient_set_examples():
    assert quotient_set(TINY, RD, TINY.zero, fi(TINY, -1, 1)) == QuotientSet((ALL_REALS,))
    assert quotient_set(TINY, RD, TINY.zero, fi(TINY, 1, 2)).is_empty
    top = FloatInterval(TINY.pos_inf, TINY.pos_inf)
    assert quotient_set(TINY, RD, TINY.pos_inf, top) == QuotientSet((interval(0, INF, False, True),))
    assert quotient_set(TINY, RD, fv(TINY, 2), fi(TINY, 1)) == QuotientSet((interval(F(1, 2), F(5, 8), True, False),))
    with pytest.raises(DomainError):
        quotient_set(TINY, RD, TINY.zero, None)


def test_quotient_relaxation_examples():
    Z = fi(DECIMAL, "5.00")
    r = quotient_relaxation(DECIMAL, RD, fi(DECIMAL, "2.20", "2.50"), Z)
    assert r.pieces == (interval(2, F("5.01") / F("2.20"), True, False),)
    r = quotient_relaxation(DECIMAL, RD, fi(DECIMAL, "1.00", "2.50"), Z)
    assert r.pieces == (interval(2, F("5.01"), True, False),)
    r = quotient_relaxation(TINY, RD, fi(TINY, -1, 1), fi(TINY, 1))
    assert len(r.pieces) == 2 and r.pieces[0].hi < 0 < r.pieces[1].lo


def test_quotient_set_matches_rounding():
    # Membership in the quotient set is exactly "x * y rounds into Z".
    from fpfactor.rounding import fp_multiply
    fl = TINY.enumerate_floats()
    for mode in REGULAR:
        for Z in (fi(TINY, 1), fi(TINY, "-3/4", "1/2"), FloatInterval(TINY.pos_inf, TINY.pos_inf)):
            for x in fl:
                qs = quotient_set(TINY, mode, x, Z)
                for y in fl:
                    if (x.is_zero and y.is_inf) or (x.is_inf and y.is_zero):
                        continue
                    assert (y.value in qs) == (fp_multiply(TINY, mode, x, y) in Z), (x, y, Z)


def test_float_hull():
    assert float_hull(TINY, interval(F(9, 10), F(5, 4), False, False)) == fi(TINY, 1, "1")
    assert float_hull(TINY, interval(1, F(5, 4), False, True)) == fi(TINY, "5/4")
    assert float_hull(TINY, interval(F(21, 20), F(11, 10))) is None


def test_example_one():
    X, Y, Z = fi(DECIMAL, "2.20", "2.50"), fi(DECIMAL, "1.00", "2.50"), fi(DECIMAL, "5.00")
    start = time.perf_counter()
    r = solve_mul_constraint(DECIMAL, RD, X, Y, Z)
    assert time.perf_counter() - start < 1
    assert r.x_bounds == fi(DECIMAL, "2.33", "2.50") and r.x_optimal
    assert r.y_bounds == fi(DECIMAL, "2.00", "2.15") and r.y_optimal
    assert r.z_bounds == Z
    assert tighten_factor_bounds(DECIMAL, RD, Y, X, Z) == (fi(DECIMAL, "2.00", "2.15"), True)


def test_empty_and_trivial_cases():
    one, two = fi(TINY, 1), fi(TINY, 2)
    for mode in REGULAR:
        assert tighten_factor_bounds(TINY, mode, one, one, two) == (None, True)
        r = solve_mul_constraint(TINY, mode, one, one, two)
        assert r.is_empty and r.x_bounds is r.y_bounds is r.z_bounds is None
        everything = TINY.everything()
        X, Y = fi(TINY, "-3/4", 2), fi(TINY, "1/8", 3)
        r = solve_mul_constraint(TINY, mode, X, Y, everything)
        assert (r.x_bounds, r.y_bounds) == (X, Y)


def test_product_bounds_examples():
    X, Y = fi(DECIMAL, "2.20", "2.50"), fi(DECIMAL, "1.00", "2.50")
    bounds, optimal = tighten_product_bounds(DECIMAL, RD, X, Y, DECIMAL.everything())
    assert bounds == fi(DECIMAL, "2.20", "6.25") and optimal
    bounds, _ = tighten_product_bounds(DECIMAL, RD, fi(DECIMAL, 0), Y, fi(DECIMAL, -1, 1))
    assert bounds == fi(DECIMAL, 0)
    assert tighten_product_bounds(TINY, RD, fi(TINY, 1), fi(TINY, 1), TINY.everything())[0] == fi(TINY, 1)
    with pytest.raises(DomainError):
        tighten_product_bounds(TINY, RD, fi(TINY, 0), FloatInterval(TINY.pos_inf, TINY.pos_inf), fi(TINY, 1))


def test_large_format_reports_relaxed_bounds():
    # Too many floats to enumerate, and z = 5.00 fails the leading-digit clause
    # of the fast search, so the infeasible endpoints 2.27 and 2.28 stay.
    wide = FloatFormat(10, 3, -1000, 1000)
    X, Y, Z = fi(wide, "2.27", "2.28"), fi(wide, "1.00", "2.50"), fi(wide, "5.00")
    r = solve_mul_constraint(wide, RD, X, Y, Z)
    assert r.x_bounds == X and not r.x_optimal
    assert r.y_bounds == fi(wide, "2.20") and not r.y_optimal
    assert r.z_bounds == Z and not r.z_optimal


def random_interval(rng, floats, widths=(0, 0, 1, 3, 8, 40)):
    i = rng.randrange(len(floats))
    j = min(len(floats) - 1, i + rng.choice(widths))
    return FloatInterval(floats[i], floats[j])


MIRROR = {RD: RU, RU: RD, RNE: RNE}


def neg(I):
    return None if I is None else -I


def contains(outer, inner):
    return inner is None or (outer is not None and outer.lo <= inner.lo and inner.hi <= outer.hi)


@pytest.mark.parametrize("fmt", [TINY, FloatFormat(2, 4, -4, 4)], ids=fmt_id)
@pytest.mark.parametrize("mode", REGULAR, ids=lambda m: m.name)
def test_propagation_properties(fmt, mode):
    rng = random.Random(12)
    fl = fmt.enumerate_floats()
    for _ in range(150):
        X, Y, Z = (random_interval(rng, fl) for _ in range(3))
        r = solve_mul_constraint(fmt, mode, X, Y, Z)
        exact = oracle_solve(fmt, mode, X, Y, Z)
        for got, want, opt, box in ((r.x_bounds, exact.x_bounds, r.x_optimal, X),
                                    (r.y_bounds, exact.y_bounds, r.y_optimal, Y),
                                    (r.z_bounds, exact.z_bounds, r.z_optimal, Z)):
            assert contains(got, want) and contains(box, got)
            if opt:
                assert got == want
        swapped = solve_mul_constraint(fmt, mode, Y, X, Z)
        assert (swapped.x_bounds, swapped.y_bounds) == (r.y_bounds, r.x_bounds)
        # Flipping both factors keeps every product; flipping x and Z needs the mirrored mode.
        flipped = solve_mul_constraint(fmt, mode, -X, -Y, Z)
        assert (flipped.x_bounds, flipped.y_bounds, flipped.z_bounds) == (neg(r.x_bounds), neg(r.y_bounds), r.z_bounds)
        mirrored = solve_mul_constraint(fmt, MIRROR[mode], -X, Y, -Z)
        assert (mirrored.x_bounds, mirrored.y_bounds, mirrored.z_bounds) == (neg(r.x_bounds), r.y_bounds, neg(r.z_bounds))
        if not r.is_empty and r.x_optimal and r.y_optimal and r.z_optimal:
            again = solve_mul_constraint(fmt, mode, r.x_bounds, r.y_bounds, r.z_bounds)
            assert (again.x_bounds, again.y_bounds, again.z_bounds) == (r.x_bounds, r.y_bounds, r.z_bounds)


def test_decimal_propagation_against_oracle():
    rng = random.Random(13)
    o = get_oracle(DECIMAL, RU)
    for _ in range(60):
        X, Y, Z = (random_interval(rng, o.floats, (0, 1, 5, 50, 400)) for _ in range(3))
        r = solve_mul_constraint(DECIMAL, RU, X, Y, Z)
        exact = o.solve(X, Y, Z)
        assert contains(r.x_bounds, exact.x_bounds) and contains(r.y_bounds, exact.y_bounds)
        if r.x_optimal:
            assert r.x_bounds == exact.x_bounds
        if r.y_optimal:
            assert r.y_bounds == exact.y_bounds
