"""Interval propagation for the constraint x (x) y = z.

Each factor bound is the division relaxation fl^-1[Z] / [min Y, max Y]
intersected with X and then snapped inward to the nearest feasible floats,
which makes it exact. Product bounds come from corner products, which is
sound but not always tight.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .errors import DomainError, PreconditionError, ResourceError, UndefinedProductError
from .exact import (EMPTY, INF, NEG_INF, ExtReal, RealInterval, interval, intersect,
                    interval_scale_shift, is_finite)
from .floats import Float, FloatFormat, FloatInterval, enumeration_cap
from .rounding import Rounding, fp_multiply, preimage_interval, round_down, round_up
from .solver import next_feasible, prev_feasible


@dataclass(frozen=True)
class QuotientSet:
    """Union of disjoint, increasing real intervals (at most two in practice)."""

    pieces: tuple[RealInterval, ...]

    @staticmethod
    def union(parts: Iterable[RealInterval]) -> "QuotientSet":
        parts = sorted((p for p in parts if not p.is_empty), key=lambda p: (p.lo, not p.lo_closed))
        merged: list[RealInterval] = []
        for p in parts:
            if merged:
                last = merged[-1]
                touching = p.lo < last.hi or (p.lo == last.hi and (p.lo_closed or last.hi_closed))
                if touching:
                    if p.hi > last.hi or (p.hi == last.hi and p.hi_closed):
                        merged[-1] = interval(last.lo, p.hi, last.lo_closed, p.hi_closed)
                    continue
            merged.append(p)
        return QuotientSet(tuple(merged))

    @property
    def is_empty(self) -> bool:
        return not self.pieces

    def __contains__(self, x: ExtReal) -> bool:
        return any(x in p for p in self.pieces)


ALL_REALS = interval(NEG_INF, INF, False, False)


def quotient_set(fmt: FloatFormat, mode: Rounding, x: Float, Z: Optional[FloatInterval]) -> QuotientSet:
    """All extended reals y with fl(xy) in Z."""
    if Z is None:
        raise DomainError("empty Z")
    if x.is_finite and not x.is_zero:
        return QuotientSet.union([interval_scale_shift(preimage_interval(fmt, mode, Z), 1 / x.value)])
    if x.is_zero:
        return QuotientSet.union([ALL_REALS] if fmt.zero in Z else [])
    has_same, has_other = x in Z, -x in Z
    parts = []
    if has_same:
        parts.append(interval(0, INF, False, True))
    if has_other:
        parts.append(interval(NEG_INF, 0, True, False))
    return QuotientSet.union(parts)


def _corner(p: ExtReal, p_closed: bool, y: ExtReal, y_closed: bool) -> tuple[ExtReal, bool]:
    """Limit of p'/y' as (p', y') -> (p, y) with y > 0, and whether it is attained.

    y may be 0 (approached from above, never attained) or +inf (never attained).
    """
    if p == 0:
        return Fraction(0), p_closed
    if not is_finite(p):
        return p, False
    if y == 0:
        return (INF if p > 0 else NEG_INF), False
    if not is_finite(y):
        return Fraction(0), False
    return p / y, p_closed and y_closed


def _divide_positive(P: RealInterval, c: ExtReal, c_closed: bool, d: ExtReal, d_closed: bool) -> RealInterval:
    """{p / y : p in P finite, y in <c, d>} for 0 <= c <= d <= inf."""
    if P.is_empty or P.lo == INF or P.hi == NEG_INF:
        return EMPTY
    lo_p, hi_p = P.lo, P.hi
    lo_closed = P.lo_closed and is_finite(P.lo)
    hi_closed = P.hi_closed and is_finite(P.hi)
    if lo_p > hi_p or (lo_p == hi_p and not (lo_closed and hi_closed)):
        return EMPTY
    corners = [_corner(lo_p, lo_closed, y, yc) for y, yc in ((c, c_closed), (d, d_closed))]
    corners += [_corner(hi_p, hi_closed, y, yc) for y, yc in ((c, c_closed), (d, d_closed))]
    lo = min(v for v, _ in corners)
    hi = max(v for v, _ in corners)
    lo_att = any(v == lo and att for v, att in corners)
    hi_att = any(v == hi and att for v, att in corners)
    return interval(lo, hi, lo_att, hi_att)


def quotient_relaxation(fmt: FloatFormat, mode: Rounding, Y: Optional[FloatInterval],
                        Z: Optional[FloatInterval]) -> QuotientSet:
    """All extended reals x with fl(xy) in Z for some real y in [min Y, max Y]."""
    if Y is None or Z is None:
        raise DomainError("empty input interval")
    P = preimage_interval(fmt, mode, Z)
    ylo, yhi = Y.lo.value, Y.hi.value
    parts: list[RealInterval] = []
    neg_P = interval_scale_shift(P, -1)
    # Finite positive and finite negative denominators.
    if yhi > 0:
        c, c_closed = (ylo, True) if ylo > 0 else (Fraction(0), False)
        d, d_closed = (yhi, True) if is_finite(yhi) else (INF, False)
        parts.append(_divide_positive(P, c, c_closed, d, d_closed))
        if INF in P:
            parts.append(interval(INF, INF))
        if NEG_INF in P:
            parts.append(interval(NEG_INF, NEG_INF))
    if ylo < 0:
        c, c_closed = (-yhi, True) if yhi < 0 else (Fraction(0), False)
        d, d_closed = (-ylo, True) if is_finite(ylo) else (INF, False)
        parts.append(_divide_positive(neg_P, c, c_closed, d, d_closed))
        if INF in P:
            parts.append(interval(NEG_INF, NEG_INF))
        if NEG_INF in P:
            parts.append(interval(INF, INF))
    # Zero and infinite denominators.
    if ylo <= 0 <= yhi:
        parts.extend(quotient_set(fmt, mode, fmt.zero, Z).pieces)
    for y in (fmt.neg_inf, fmt.pos_inf):
        if y in Y:
            parts.extend(quotient_set(fmt, mode, y, Z).pieces)
    return QuotientSet.union(parts)


def float_hull(fmt: FloatFormat, I: RealInterval) -> Optional[FloatInterval]:
    """The floats inside I, as a float interval (None when there are none)."""
    if I.is_empty:
        return None
    lo = round_up(fmt, I.lo)
    if not I.lo_closed and lo.value == I.lo:
        lo = fmt.successor(lo)
    hi = round_down(fmt, I.hi)
    if not I.hi_closed and hi.value == I.hi:
        hi = fmt.predecessor(hi)
    if hi < lo or hi.value not in I or lo.value not in I:
        return None
    return FloatInterval(lo, hi)


def _hull_union(parts: Iterable[Optional[FloatInterval]]) -> Optional[FloatInterval]:
    parts = [p for p in parts if p is not None]
    if not parts:
        return None
    return FloatInterval(min(p.lo for p in parts), max(p.hi for p in parts))


def _scan_next(fmt: FloatFormat, mode: Rounding, x: Float, hi: Float, Z: FloatInterval, step) -> Optional[Float]:
    # Exhaustive walk with the exact feasibility predicate; desk scale only.
    from .feasibility import is_feasible
    while True:
        if is_feasible(fmt, mode, x, Z)[0]:
            return x
        if x == hi:
            return None
        x = step(x)


def _feasible_extremes(fmt: FloatFormat, mode: Rounding, B: FloatInterval, Z: FloatInterval,
                       cap: Optional[int]) -> tuple[Optional[FloatInterval], bool]:
    try:
        lo = next_feasible(fmt, mode, B.lo, Z)
        if lo > B.hi:
            return None, True
        hi = prev_feasible(fmt, mode, B.hi, Z)
        return FloatInterval(lo, hi), True
    except PreconditionError:
        if fmt.count() > enumeration_cap(cap):
            return B, False
    lo = _scan_next(fmt, mode, B.lo, B.hi, Z, fmt.successor)
    if lo is None:
        return None, True
    hi = _scan_next(fmt, mode, B.hi, lo, Z, fmt.predecessor)
    return FloatInterval(lo, hi), True


def tighten_factor_bounds(fmt: FloatFormat, mode: Rounding, X: Optional[FloatInterval],
                          Y: Optional[FloatInterval], Z: Optional[FloatInterval],
                          cap: Optional[int] = None) -> tuple[Optional[FloatInterval], bool]:
    """Exact bounds of {x in X : x (x) y in Z for some y in Y}, with an optimality flag."""
    if X is None or Y is None or Z is None:
        raise DomainError("empty input interval")
    box = interval(X.lo.value, X.hi.value)
    results, optimal = [], True
    for piece in quotient_relaxation(fmt, mode, Y, Z).pieces:
        B = float_hull(fmt, intersect(box, piece))
        if B is None:
            continue
        bounds, exact = _feasible_extremes(fmt, mode, B, Z, cap)
        results.append(bounds)
        optimal = optimal and exact
    return _hull_union(results), optimal


def tighten_product_bounds(fmt: FloatFormat, mode: Rounding, X: Optional[FloatInterval],
                           Y: Optional[FloatInterval], Z: Optional[FloatInterval],
                           confirm_cap: int = 10**6) -> tuple[Optional[FloatInterval], bool]:
    """Z intersected with the hull of the corner products.

    When the box is small enough to enumerate, the exact product bounds
    replace the relaxation and the result is flagged optimal.
    """
    if X is None or Y is None or Z is None:
        raise DomainError("empty input interval")
    products = []
    for x in (X.lo, X.hi):
        for y in (Y.lo, Y.hi):
            try:
                products.append(fp_multiply(fmt, mode, x, y))
            except UndefinedProductError:
                pass
    if not products:
        raise DomainError("every corner product is undefined")
    lo, hi = max(min(products), Z.lo), min(max(products), Z.hi)
    relaxed = FloatInterval(lo, hi) if lo <= hi else None
    if relaxed is None:
        return None, True
    try:
        from .oracle import exact_product_bounds
        return exact_product_bounds(fmt, mode, X, Y, relaxed, confirm_cap), True
    except ResourceError:
        return relaxed, False


@dataclass(frozen=True)
class PropagationResult:
    x_bounds: Optional[FloatInterval]
    y_bounds: Optional[FloatInterval]
    z_bounds: Optional[FloatInterval]
    x_optimal: bool
    y_optimal: bool
    z_optimal: bool

    @property
    def is_empty(self) -> bool:
        return self.x_bounds is None


def solve_mul_constraint(fmt: FloatFormat, mode: Rounding, X: Optional[FloatInterval],
                         Y: Optional[FloatInterval], Z: Optional[FloatInterval],
                         cap: Optional[int] = None) -> PropagationResult:
    """Tightest bounds on x, y and z consistent with x (x) y = z."""
    xb, xo = tighten_factor_bounds(fmt, mode, X, Y, Z, cap)
    yb, yo = tighten_factor_bounds(fmt, mode, Y, X, Z, cap)
    if xb is None or yb is None:
        return PropagationResult(None, None, None, xo, yo, True)
    zb, zo = tighten_product_bounds(fmt, mode, xb, yb, Z)
    if zb is None:
        return PropagationResult(None, None, None, xo, yo, zo)
    return PropagationResult(xb, yb, zb, xo, yo, zo)
