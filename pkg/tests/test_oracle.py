import numpy as np
import pytest

from fpfactor.errors import ResourceError, UndefinedProductError
from fpfactor.floats import BINARY64, FloatFormat, FloatInterval
from fpfactor.oracle import (Oracle, UNDEFINED, get_oracle, oracle_feasible, oracle_next_feasible,
                             oracle_solve)
from fpfactor.rounding import Rounding, fp_multiply

from conftest import DECIMAL, REGULAR, TINY, all_small_intervals, fi, fv, fmt_id

RD, RU = Rounding.RD, Rounding.RU


@pytest.mark.parametrize("fmt", [TINY, FloatFormat(3, 2, -2, 2), FloatFormat(2, 1, -3, 3),
                                 FloatFormat(10, 2, -1, 1)], ids=fmt_id)
@pytest.mark.parametrize("mode", list(Rounding), ids=lambda m: m.name)
def test_table_matches_exact_multiplication(fmt, mode):
    o = Oracle(fmt, mode)
    fl = o.floats
    t = o.table
    step = max(1, len(fl) // 80)
    for i in range(0, len(fl), step):
        for j, y in enumerate(fl):
            try:
                want = o.index[fp_multiply(fmt, mode, fl[i], y)]
            except UndefinedProductError:
                want = UNDEFINED
            assert t[i, j] == want, (fl[i], y)


def test_oracle_examples():
    Z = fi(TINY, "7/4")
    assert not oracle_feasible(TINY, RU, fv(TINY, "3/2"), Z)
    assert oracle_next_feasible(TINY, RU, fv(TINY, "3/2"), Z) == fv(TINY, "7/4")
    assert oracle_feasible(DECIMAL, RD, fv(DECIMAL, "2.15"), fi(DECIMAL, "5.00"))
    for x in TINY.enumerate_floats():
        if x.is_finite and not x.is_zero:
            assert oracle_feasible(TINY, RD, x, fi(TINY, -1, 1))
    top = FloatInterval(TINY.pos_inf, TINY.pos_inf)
    assert oracle_next_feasible(TINY, RD, fv(TINY, "5/16"), top) == fv(TINY, "5/16")


def test_oracle_solve_examples():
    r = oracle_solve(DECIMAL, RD, fi(DECIMAL, "2.20", "2.50"), fi(DECIMAL, "1.00", "2.50"), fi(DECIMAL, "5.00"))
    assert r.x_bounds == fi(DECIMAL, "2.33", "2.50") and r.y_bounds == fi(DECIMAL, "2.00", "2.15")
    assert r.z_bounds == fi(DECIMAL, "5.00")
    assert oracle_solve(TINY, RD, fi(TINY, 1), fi(TINY, 1), fi(TINY, 2)).is_empty
    finite = FloatInterval(TINY.min_float, TINY.max_float)
    assert oracle_solve(TINY, RD, finite, finite, finite).x_bounds == finite


@pytest.mark.parametrize("mode", REGULAR, ids=lambda m: m.name)
def test_oracle_negation_closure(mode):
    o = get_oracle(TINY, mode)
    for Z in all_small_intervals(TINY, o.floats):
        mask = o.feasible_mask(Z)
        assert np.array_equal(mask, mask[::-1])


def test_partitioning_does_not_matter():
    o = get_oracle(DECIMAL, RU)
    X, Y, Z = fi(DECIMAL, "-3.00", "4.00"), fi(DECIMAL, "1.10", "1.30"), fi(DECIMAL, "2.00", "2.10")
    assert o.solve(X, Y, Z, use_table=True) == o.solve(X, Y, Z, use_table=False)
    rows = np.stack([o.row(i) for i in range(o.n)])
    assert np.array_equal(rows, o.table)


def test_resource_limits():
    with pytest.raises(ResourceError):
        oracle_feasible(BINARY64, RD, BINARY64.from_value(1), FloatInterval(BINARY64.from_value(1), BINARY64.from_value(1)))
    o = get_oracle(DECIMAL, RD)
    with pytest.raises(ResourceError):
        o.solve(DECIMAL.everything(), DECIMAL.everything(), fi(DECIMAL, 1), pair_cap=1000)
