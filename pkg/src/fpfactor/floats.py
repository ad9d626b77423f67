"""Parametric floating-point formats.

A format (beta, p, emin, emax) fixes the set of finite values M * beta**q with
|M| < beta**p and qmin <= q <= qmax, where qmin = emin - p + 1 and
qmax = emax - p + 1, plus the two infinities. There is no NaN and no negative
zero. Every finite value has exactly one canonical encoding: |M| >= beta**(p-1)
unless q = qmin.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache, total_ordering
from typing import Iterator, Optional

from .errors import DomainError, NotRepresentableError, ResourceError
from .exact import INF, NEG_INF, ExtReal, ext, floor_log, is_finite

DEFAULT_CAP = 2**20


def enumeration_cap(cap: Optional[int] = None) -> int:
    """Explicit cap, else FPFACTOR_ORACLE_CAP, else the default."""
    if cap is not None:
        return cap
    env = os.environ.get("FPFACTOR_ORACLE_CAP")
    return int(env) if env else DEFAULT_CAP


@lru_cache(maxsize=4096)
def power(beta: int, e: int) -> Fraction:
    return Fraction(beta) ** e


def ufp(x: ExtReal, beta: int) -> Fraction:
    """Unit in first place: the power of beta at the leading digit of x."""
    if not is_finite(x):
        raise DomainError("ufp of an infinity")
    if x == 0:
        return Fraction(0)
    return power(beta, floor_log(abs(Fraction(x)), beta))


@total_ordering
@dataclass(frozen=True)
class Float:
    """One member of a format: ``M * beta**q``, or an infinity when q is None.

    Infinities carry M = +1 or -1. Instances should come from a
    :class:`FloatFormat`, which guarantees the canonical encoding; equality is
    then the same as value equality.
    """

    M: int
    q: Optional[int]
    beta: int

    @cached_property
    def value(self) -> ExtReal:
        if self.q is None:
            return INF if self.M > 0 else NEG_INF
        if self.q >= 0:
            return Fraction(self.M * self.beta**self.q)
        return Fraction(self.M, self.beta**-self.q)

    @property
    def is_finite(self) -> bool:
        return self.q is not None

    @property
    def is_inf(self) -> bool:
        return self.q is None

    @property
    def is_zero(self) -> bool:
        return self.M == 0

    @property
    def sign(self) -> int:
        return (self.M > 0) - (self.M < 0)

    def __neg__(self) -> "Float":
        return Float(-self.M, self.q, self.beta)

    def __abs__(self) -> "Float":
        return self if self.M >= 0 else -self

    def __lt__(self, other: "Float") -> bool:
        if not isinstance(other, Float):
            return NotImplemented
        return self.value < other.value

    def __repr__(self) -> str:
        if self.q is None:
            return "+inf" if self.M > 0 else "-inf"
        return f"{self.M}*{self.beta}^{self.q}"


@dataclass(frozen=True)
class FloatInterval:
    """The floats in [lo, hi]. Empty float intervals are represented by None."""

    lo: Float
    hi: Float

    def __post_init__(self):
        if self.hi < self.lo:
            raise DomainError("float interval endpoints out of order")

    def __contains__(self, x: Float) -> bool:
        return self.lo <= x <= self.hi

    def __neg__(self) -> "FloatInterval":
        return FloatInterval(-self.hi, -self.lo)

    def __repr__(self) -> str:
        return f"[{self.lo!r}, {self.hi!r}]"


@dataclass(frozen=True)
class FloatFormat:
    beta: int
    p: int
    emin: int
    emax: int

    def __post_init__(self):
        if self.beta < 2 or self.p < 1 or self.emin > self.emax:
            raise DomainError(f"invalid format {self}")

    @property
    def qmin(self) -> int:
        return self.emin - self.p + 1

    @property
    def qmax(self) -> int:
        return self.emax - self.p + 1

    @cached_property
    def max_significand(self) -> int:
        return self.beta**self.p - 1

    @cached_property
    def min_normal_significand(self) -> int:
        return self.beta ** (self.p - 1)

    @cached_property
    def max_value(self) -> Fraction:
        return self.max_significand * power(self.beta, self.qmax)

    @cached_property
    def min_positive_value(self) -> Fraction:
        return power(self.beta, self.qmin)

    @cached_property
    def min_normal_value(self) -> Fraction:
        return power(self.beta, self.emin)

    # Distinguished members.

    @cached_property
    def pos_inf(self) -> Float:
        return Float(1, None, self.beta)

    @cached_property
    def neg_inf(self) -> Float:
        return Float(-1, None, self.beta)

    @cached_property
    def zero(self) -> Float:
        return Float(0, self.qmin, self.beta)

    @cached_property
    def max_float(self) -> Float:
        return Float(self.max_significand, self.qmax, self.beta)

    @cached_property
    def min_float(self) -> Float:
        return Float(-self.max_significand, self.qmax, self.beta)

    def count(self) -> int:
        """Cardinality of the format including both infinities."""
        b, p = self.beta, self.p
        positive = (self.emax - self.emin + 1) * (b**p - b ** (p - 1)) + b ** (p - 1) - 1
        return 2 * positive + 3

    # Exponents.

    def exponent_of(self, x: ExtReal) -> int:
        if not is_finite(x):
            raise DomainError("exponent of an infinity")
        ax = abs(Fraction(x))
        if ax < self.min_normal_value:
            return self.emin
        return floor_log(ax, self.beta)

    def quantum_of(self, x: ExtReal) -> int:
        return self.exponent_of(x) - self.p + 1

    # Construction.

    def make(self, M: int, q: int) -> Float:
        """Canonical float with value M * beta**q, or NotRepresentableError."""
        b = self.beta
        if M == 0:
            return self.zero
        # Shift so that the significand has exactly p digits, then clamp at qmin.
        digits = floor_log(Fraction(abs(M)), b) + 1
        target = max(q + digits - self.p, self.qmin)
        if target < q:
            M *= b ** (q - target)
        elif target > q:
            scale = b ** (target - q)
            if M % scale:
                raise NotRepresentableError(f"{M}*{b}^{q} needs more than {self.p} digits")
            M //= scale
        if target > self.qmax:
            raise NotRepresentableError(f"{M}*{b}^{target} overflows")
        return Float(M, target, b)

    def from_value(self, v) -> Float:
        """Float equal to the exact value v; NotRepresentableError otherwise."""
        v = ext(v)
        if not is_finite(v):
            return self.pos_inf if v > 0 else self.neg_inf
        if v == 0:
            return self.zero
        q = self.quantum_of(v)
        scaled = v / power(self.beta, q)
        if scaled.denominator != 1 or abs(scaled.numerator) > self.max_significand or q > self.qmax:
            raise NotRepresentableError(f"{v} is not in {self}")
        return Float(scaled.numerator, q, self.beta)

    def is_representable(self, v) -> bool:
        try:
            self.from_value(v)
        except NotRepresentableError:
            return False
        return True

    def is_normal(self, x: Float) -> bool:
        return x.is_finite and abs(x.M) >= self.min_normal_significand

    # Neighbours.

    def successor(self, x: Float) -> Float:
        if x.is_inf:
            return self.min_float if x.M < 0 else self.pos_inf
        if x.M >= self.max_significand and x.q == self.qmax:
            return self.pos_inf
        # Canonical encodings have q = Q(x), so x + beta**Q(x) is (M + 1) at q,
        # except at negative powers of beta in the normal range, where the
        # step shrinks to beta**(Q(x) - 1).
        if x.M == -self.min_normal_significand and x.q > self.qmin:
            return Float(-self.max_significand, x.q - 1, self.beta)
        return self.make(x.M + 1, x.q)

    def predecessor(self, x: Float) -> Float:
        return -self.successor(-x)

    def enumerate_floats(self, cap: Optional[int] = None) -> list[Float]:
        """All members in increasing order."""
        n = self.count()
        limit = enumeration_cap(cap)
        if n > limit:
            raise ResourceError(f"{self} has {n} members, above the cap {limit}")
        positive = list(self._positive())
        return [self.neg_inf] + [-x for x in reversed(positive)] + [self.zero] + positive + [self.pos_inf]

    def _positive(self) -> Iterator[Float]:
        b, low = self.beta, self.min_normal_significand
        for M in range(1, low):
            yield Float(M, self.qmin, b)
        for q in range(self.qmin, self.qmax + 1):
            for M in range(low, b**self.p):
                yield Float(M, q, b)

    def interval(self, lo, hi) -> FloatInterval:
        """Float interval from two exactly representable endpoint values."""
        lo = lo if isinstance(lo, Float) else self.from_value(lo)
        hi = hi if isinstance(hi, Float) else self.from_value(hi)
        return FloatInterval(lo, hi)

    def everything(self) -> FloatInterval:
        return FloatInterval(self.neg_inf, self.pos_inf)

    def __str__(self) -> str:
        return f"b={self.beta},p={self.p},emin={self.emin},emax={self.emax}"


BINARY64 = FloatFormat(2, 53, -1022, 1023)
