"""Rounding functions, their preimages, and floating-point multiplication.

RD returns the greatest float not above x and RU the least float not below
x. Some presentations write these set comprehensions with the inequality
the other way round; that reading would break RD(x) <= x <= RU(x), so the
bound property is what is implemented here.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import DomainError, UndefinedProductError
from .exact import INF, NEG_INF, ExtReal, RealInterval, ext, interval, is_finite, tick
from .floats import Float, FloatFormat, FloatInterval, power


class Rounding(enum.Enum):
    RD = "rd"
    RU = "ru"
    RNE = "rne"
    CLAMPED_RD = "clamped-rd"  # irregular on purpose; for negative tests only

    @property
    def is_regular(self) -> bool:
        return self is not Rounding.CLAMPED_RD


def overflow_threshold(fmt: FloatFormat) -> Fraction:
    """Magnitude from which round-to-nearest goes to infinity."""
    b = fmt.beta
    return power(b, fmt.emax) * (b - power(b, 1 - fmt.p) / 2)


def round_down(fmt: FloatFormat, x: ExtReal) -> Float:
    if not is_finite(x):
        return fmt.pos_inf if x > 0 else fmt.neg_inf
    if x > fmt.max_value:
        return fmt.max_float
    if x < -fmt.max_value:
        return fmt.neg_inf
    if x == 0:
        return fmt.zero
    tick()
    q = fmt.quantum_of(x)
    n, d = x.numerator, x.denominator
    M = (n * fmt.beta**-q) // d if q <= 0 else n // (d * fmt.beta**q)
    return fmt.make(M, q)


def round_up(fmt: FloatFormat, x: ExtReal) -> Float:
    return -round_down(fmt, -x)


def _round_nearest_even(fmt: FloatFormat, x: Fraction) -> Float:
    if abs(x) >= overflow_threshold(fmt):
        return fmt.pos_inf if x > 0 else fmt.neg_inf
    if x > fmt.max_value:
        return fmt.max_float
    if x < -fmt.max_value:
        return fmt.min_float
    lo, hi = round_down(fmt, x), round_up(fmt, x)
    if lo == hi:
        return lo
    below, above = x - lo.value, hi.value - x
    if below != above:
        return lo if below < above else hi
    # Tie: pick the neighbour whose value is an even multiple of the gap.
    gap = hi.value - lo.value
    return lo if (lo.value / gap).numerator % 2 == 0 else hi


def round_value(fmt: FloatFormat, mode: Rounding, x) -> Float:
    """fl(x) for an exact extended real x."""
    x = ext(x)
    if mode is Rounding.RD:
        return round_down(fmt, x)
    if mode is Rounding.RU:
        return round_up(fmt, x)
    if mode is Rounding.CLAMPED_RD:
        return round_down(fmt, x) if x <= fmt.max_value else fmt.pos_inf
    if not is_finite(x):
        return round_down(fmt, x)
    return _round_nearest_even(fmt, x)


def fp_multiply(fmt: FloatFormat, mode: Rounding, x: Float, y: Float) -> Float:
    """x (x) y = fl(xy)."""
    if (x.is_zero and y.is_inf) or (x.is_inf and y.is_zero):
        raise UndefinedProductError("0 * inf")
    if x.is_inf or y.is_inf:
        s = x.sign * y.sign
        return fmt.pos_inf if s > 0 else fmt.neg_inf
    tick()
    return round_value(fmt, mode, x.value * y.value)


def _upper_neighbour_value(fmt: FloatFormat, b: Float) -> Fraction:
    # Past max F the grid continues with one more step for midpoint purposes.
    if b == fmt.max_float:
        return power(fmt.beta, fmt.emax + 1)
    return fmt.successor(b).value


def preimage_interval(fmt: FloatFormat, mode: Rounding, Z: Optional[FloatInterval]) -> RealInterval:
    """Exact set of extended reals that round into Z."""
    if Z is None:
        raise DomainError("preimage of an empty float interval")
    tick()
    a, b = Z.lo, Z.hi
    if mode is Rounding.RD or mode is Rounding.CLAMPED_RD:
        clamped = mode is Rounding.CLAMPED_RD
        if a == fmt.pos_inf:
            return interval(fmt.max_value, INF, False, True) if clamped else interval(INF, INF)
        if b == fmt.pos_inf:
            return interval(a.value, INF)
        if clamped and b == fmt.max_float:
            return interval(a.value, b.value)
        return interval(a.value, fmt.successor(b).value, True, False)
    if mode is Rounding.RU:
        if a == fmt.neg_inf:
            return interval(NEG_INF, b.value)
        return interval(fmt.predecessor(a).value, b.value, False, True)

    # Round to nearest, ties to even. Each finite endpoint sits at a midpoint
    # and is closed exactly when the tie resolves into Z.
    threshold = overflow_threshold(fmt)
    if a == fmt.neg_inf:
        lo, lo_closed = NEG_INF, True
    elif a == fmt.pos_inf:
        lo, lo_closed = threshold, True
    else:
        lo = (a.value - _upper_neighbour_value(fmt, -a)) / 2
        lo_closed = round_value(fmt, mode, lo) == a
    if b == fmt.pos_inf:
        hi, hi_closed = INF, True
    elif b == fmt.neg_inf:
        hi, hi_closed = -threshold, True
    else:
        hi = (b.value + _upper_neighbour_value(fmt, b)) / 2
        hi_closed = round_value(fmt, mode, hi) == b
    return interval(lo, hi, lo_closed, hi_closed)


@dataclass(frozen=True)
class RegularityReport:
    min_ratio: ExtReal
    argmin: Optional[Float]

    @property
    def regular(self) -> bool:
        return self.min_ratio >= 1


def regularity_margin(fmt: FloatFormat, mode: Rounding, cap: Optional[int] = None) -> RegularityReport:
    """Smallest ratio of a point preimage diameter to its required width."""
    best, arg = INF, None
    for x in fmt.enumerate_floats(cap):
        if not x.is_finite or x.is_zero:
            continue
        at_power = abs(x.value) == power(fmt.beta, fmt.exponent_of(x.value))
        need = power(fmt.beta, x.q - (1 if at_power else 0))
        ratio = preimage_interval(fmt, mode, FloatInterval(x, x)).diameter() / need
        if ratio < best:
            best, arg = ratio, x
    return RegularityReport(best, arg)
