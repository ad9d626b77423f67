"""Exact extended-real arithmetic.

Finite values are ``fractions.Fraction`` (always in lowest terms with a
positive denominator). The two infinities are the float sentinels ``INF`` and
``NEG_INF``; they compare correctly against fractions and are never mixed
into arithmetic without an explicit case split. No finite binary float ever
enters a computation.
"""

from __future__ import annotations

import math
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Union

from .errors import DomainError

INF = math.inf
NEG_INF = -math.inf

ExtReal = Union[Fraction, float]


def ext(x) -> ExtReal:
    """Coerce ints, fractions, decimal strings and +-inf to an ExtReal."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        if math.isinf(x):
            return x
        raise DomainError("finite binary floats are not exact inputs")
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise DomainError(f"cannot interpret {x!r} as an extended real")


def is_finite(x: ExtReal) -> bool:
    return not isinstance(x, float)


def sign(x: ExtReal) -> int:
    return (x > 0) - (x < 0)


# Operation counting. Each exact primitive (a big-integer or rational
# operation, an integer square root, an exact logarithm floor) counts as one.
# The counter lives in a context variable so concurrent callers never share it.

@dataclass
class OpCounter:
    ops: int = 0


_counter: ContextVar[Optional[OpCounter]] = ContextVar("fpfactor_ops", default=None)


def tick(n: int = 1) -> None:
    c = _counter.get()
    if c is not None:
        c.ops += n


@contextmanager
def count_operations() -> Iterator[OpCounter]:
    counter = OpCounter()
    token = _counter.set(counter)
    try:
        yield counter
    finally:
        _counter.reset(token)


def rat_mod(x: ExtReal, y: ExtReal) -> Fraction:
    """Remainder of floored division, ``x - y*floor(x/y)``."""
    if not (is_finite(x) and is_finite(y)):
        raise DomainError("rat_mod needs finite arguments")
    if y == 0:
        raise DomainError("rat_mod by zero")
    tick()
    # Fraction.__mod__ is exactly the floored remainder.
    return Fraction(x) % Fraction(y)


def isqrt_floor(n: int) -> tuple[int, bool]:
    """Return ``(r, perfect)`` with r*r <= n < (r+1)**2."""
    if n < 0:
        raise DomainError("isqrt of a negative integer")
    tick()
    r = math.isqrt(n)
    return r, r * r == n


def floor_log(x: Fraction, beta: int) -> int:
    """Exact ``floor(log_beta(x))`` for a positive rational x.

    Bit lengths bracket the answer; a binary search over that bracket with
    exact power comparisons pins it down.
    """
    if x <= 0:
        raise DomainError("floor_log needs a positive argument")
    tick()
    n, d = x.numerator, x.denominator
    diff = n.bit_length() - d.bit_length()  # log2(x) in (diff - 1, diff + 1)
    if beta == 2:
        e = diff
        if (n < d << e) if e >= 0 else (n << -e < d):
            e -= 1
        return e
    lo_bits, hi_bits = beta.bit_length() - 1, beta.bit_length()  # log2(beta) in [lo_bits, hi_bits)
    if diff >= 0:
        lo, hi = (diff - 1) // hi_bits - 1, (diff + 1) // lo_bits + 1
    else:
        lo, hi = (diff - 1) // lo_bits - 1, (diff + 1) // hi_bits + 1

    def at_least(e: int) -> bool:  # beta**e <= x
        return d * beta**e <= n if e >= 0 else d <= n * beta**-e

    while lo < hi:
        mid = (lo + hi + 1) // 2
        if at_least(mid):
            lo = mid
        else:
            hi = mid - 1
    return lo


@dataclass(frozen=True)
class RealInterval:
    """An interval of extended reals with independent endpoint openness.

    Build instances with :func:`interval`, which returns the canonical
    :data:`EMPTY` for empty input. Infinite endpoints may be closed, meaning
    the infinity itself is a member.
    """

    lo: ExtReal
    hi: ExtReal
    lo_closed: bool = True
    hi_closed: bool = True

    def __post_init__(self):
        if self.lo > self.hi and not (self.lo == INF and self.hi == NEG_INF):
            raise DomainError("interval endpoints out of order")
        if self.lo == self.hi and not (self.lo_closed and self.hi_closed):
            raise DomainError("degenerate interval must be closed")

    @property
    def is_empty(self) -> bool:
        return self.lo > self.hi

    def __contains__(self, x: ExtReal) -> bool:
        if self.is_empty:
            return False
        above = x >= self.lo if self.lo_closed else x > self.lo
        below = x <= self.hi if self.hi_closed else x < self.hi
        return above and below

    def diameter(self) -> ExtReal:
        if self.is_empty:
            return Fraction(0)
        if self.lo == self.hi:
            return Fraction(0)
        if not (is_finite(self.lo) and is_finite(self.hi)):
            return INF
        return self.hi - self.lo

    def __str__(self) -> str:
        if self.is_empty:
            return "{}"
        return "%s%s, %s%s" % ("[" if self.lo_closed else "(", self.lo, self.hi,
                               "]" if self.hi_closed else ")")


EMPTY = RealInterval(INF, NEG_INF, False, False)


def interval(lo: ExtReal, hi: ExtReal, lo_closed: bool = True, hi_closed: bool = True) -> RealInterval:
    lo, hi = ext(lo), ext(hi)
    if lo > hi or (lo == hi and not (lo_closed and hi_closed)):
        return EMPTY
    return RealInterval(lo, hi, lo_closed, hi_closed)


def intersect(a: RealInterval, b: RealInterval) -> RealInterval:
    if a.is_empty or b.is_empty:
        return EMPTY
    if a.lo > b.lo or (a.lo == b.lo and not a.lo_closed):
        lo, lo_closed = a.lo, a.lo_closed
    else:
        lo, lo_closed = b.lo, b.lo_closed
    if a.hi < b.hi or (a.hi == b.hi and not a.hi_closed):
        hi, hi_closed = a.hi, a.hi_closed
    else:
        hi, hi_closed = b.hi, b.hi_closed
    return interval(lo, hi, lo_closed, hi_closed)


def integers_in(I: RealInterval) -> tuple[Optional[int], Optional[int]]:
    """Least and greatest integers in I; None when empty or unbounded there."""
    tick()
    if I.is_empty:
        return None, None
    lo = None
    if is_finite(I.lo):
        lo = math.ceil(I.lo)
        if lo == I.lo and not I.lo_closed:
            lo += 1
    hi = None
    if is_finite(I.hi):
        hi = math.floor(I.hi)
        if hi == I.hi and not I.hi_closed:
            hi -= 1
    if lo is not None and hi is not None and lo > hi:
        return None, None
    if lo is None and hi is None:
        return None, None
    # A one-sided bound still needs an integer on the other side to exist.
    if lo is not None and hi is None and not (lo in I):
        return None, None
    if hi is not None and lo is None and not (hi in I):
        return None, None
    return lo, hi


def _affine(t: ExtReal, mul: Fraction, add: Fraction) -> ExtReal:
    if is_finite(t):
        return mul * t + add
    return t if mul > 0 else -t


def interval_scale_shift(I: RealInterval, mul: ExtReal, add: ExtReal = Fraction(0)) -> RealInterval:
    """Image of I under ``t -> mul*t + add``."""
    if not (is_finite(mul) and is_finite(add)) or mul == 0:
        raise DomainError("scale must be finite nonzero and shift finite")
    tick()
    if I.is_empty:
        return EMPTY
    mul, add = Fraction(mul), Fraction(add)
    a, b = _affine(I.lo, mul, add), _affine(I.hi, mul, add)
    if mul > 0:
        return RealInterval(a, b, I.lo_closed, I.hi_closed)
    return RealInterval(b, a, I.hi_closed, I.lo_closed)


def to_decimal_string(x: ExtReal) -> str:
    """Exact decimal if x terminates in base ten, else ``num/den``."""
    if not is_finite(x):
        return "inf" if x > 0 else "-inf"
    d = x.denominator
    twos = fives = 0
    while d % 2 == 0:
        d //= 2
        twos += 1
    while d % 5 == 0:
        d //= 5
        fives += 1
    if d != 1:
        return f"{x.numerator}/{x.denominator}"
    places = max(twos, fives)
    if places == 0:
        return str(x.numerator)
    scaled = abs(x.numerator) * 10**places // x.denominator
    digits = str(scaled).rjust(places + 1, "0")
    return ("-" if x < 0 else "") + digits[:-places] + "." + digits[-places:]
