"""Search for the nearest feasible float in a constant number of operations.

The search reduces to an integer problem: find the least integer m >= n whose
remainder against a fixed product lands in a window I. Between consecutive
roots of the "quadratic extension" t -> (-t**2 - |ab| mod t) that remainder
is a quadratic in m, so candidates come from floors of quadratic roots.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Optional, Union

from .errors import DomainError, NotRepresentableError, PreconditionError
from .exact import INF, RealInterval, floor_log, integers_in, isqrt_floor, rat_mod, tick
from .feasibility import is_feasible, normalized_significand, scaled_target
from .floats import Float, FloatFormat, FloatInterval, power
from .rounding import Rounding

IntOrInf = Union[int, float]


def quadratic_roots_floor(a: int, b: int, c: int) -> set[int]:
    """Floors of the real roots of a*t**2 + b*t + c."""
    if a == 0:
        raise DomainError("leading coefficient is zero")
    if a < 0:
        a, b, c = -a, -b, -c
    tick(2)
    disc = b * b - 4 * a * c
    if disc < 0:
        return set()
    r, perfect = isqrt_floor(disc)
    floor_neg_sqrt = -r if perfect else -r - 1
    # floor(x / n) == floor(floor(x) / n) for positive integers n.
    tick(2)
    return {(-b + floor_neg_sqrt) // (2 * a), (-b + r) // (2 * a)}


def _quad(a: int, b: int, c: int, m: int) -> int:
    tick()
    return (a * m + b) * m + c


def next_quadratic_point_within_bounds(a: int, b: int, c: int, n: int, I: RealInterval) -> IntOrInf:
    """Least integer m >= n with a*m**2 + b*m + c in I, or +inf."""
    if a == 0:
        raise DomainError("leading coefficient is zero")
    if _quad(a, b, c, n) in I:
        return n
    lo, hi = integers_in(I)
    if lo is None and hi is None:
        return INF
    roots: set[int] = set()
    for bound in (lo, hi):
        if bound is not None:
            roots |= quadratic_roots_floor(a, b, c - bound)
    best = INF
    for r in roots:
        for m in (r, r + 1):
            if n <= m < best and _quad(a, b, c, m) in I:
                best = m
    return best


def next_quadratic_mod_linear_root_floor(a: int, c: int, n: int) -> Optional[int]:
    """Least floor of a real t >= n with (a*t**2 + c mod t) = 0; None if there is none."""
    if a == 0 or c == 0 or n == 0:
        raise DomainError("arguments must be nonzero")
    tick(2)
    q = Fraction(a * n * n + c, n)
    roots = quadratic_roots_floor(a, -math.floor(q), c) | quadratic_roots_floor(a, -math.ceil(q), c)
    above = [r for r in roots if r >= n]
    return min(above) if above else None


def _passes(ab: int, m: int, I: RealInterval) -> bool:
    return rat_mod(-ab, m) in I or -rat_mod(ab, m) in I


def next_divisor_in_bounds(a: int, b: int, n: int, I: RealInterval) -> int:
    """Least m >= n with (-ab mod m) in I or -(ab mod m) in I."""
    tick()
    ab = a * b
    if n != 0 and _passes(ab, n, I):
        return n
    if not (0 < abs(a) <= abs(n) <= abs(b) <= 2 * abs(a)):
        raise DomainError("need 0 < |a| <= |n| <= |b| <= |2a|")
    if 0 not in I or I.diameter() < abs(a):
        raise DomainError("window must contain 0 and be at least |a| wide")
    low_root = next_quadratic_mod_linear_root_floor(-1, -abs(ab), n)
    if low_root is None:
        raise AssertionError("the quadratic extension always has a root past n here")
    # On [n, low_root] both remainders are quadratics in m, so their least
    # admissible points are exact there. A failing low_root does not rule
    # out earlier solutions when n < 0, so the search always runs; past
    # low_root the answer is low_root + 1, the ceiling of the root.
    tick(2)
    q = Fraction(-n * n - abs(ab), n)
    if ab > 0:
        c = next_quadratic_point_within_bounds(-1, -math.floor(q), -ab, n, I)
        d = next_quadratic_point_within_bounds(-1, -math.ceil(q), -ab, n, I)
    else:
        c = next_quadratic_point_within_bounds(1, math.ceil(q), -ab, n, I)
        d = next_quadratic_point_within_bounds(1, math.floor(q), -ab, n, I)
    best = min(c, d)
    return best if best <= low_root else low_root + 1


def next_plausible(fmt: FloatFormat, mode: Rounding, Mx: int, z: Float, Z: FloatInterval) -> int:
    """Least z-plausible integer significand M >= Mx."""
    b, p = fmt.beta, fmt.p
    if not mode.is_regular:
        raise PreconditionError("regular", f"{mode.name} is not a regular rounding")
    if not fmt.min_normal_significand <= abs(Mx) <= fmt.max_significand:
        raise PreconditionError("significand-range", f"|{Mx}| is not a p-digit significand")
    if not fmt.is_normal(z) or z not in Z:
        raise PreconditionError("z-normal", "z must be a normal member of Z")
    tick(2)
    Mz = z.M  # canonical normal encoding: q = Q(z)
    k = floor_log(Fraction(abs(Mz), abs(Mx)), b)
    window = scaled_target(fmt, mode, z, Z, k)
    tick()
    scaled_z = Mz * b**-k if k <= 0 else Fraction(Mz, b**k)
    # A passing Mx is its own answer whatever the remaining requirements.
    if _passes(fmt.min_normal_significand * scaled_z, Mx, window):
        return Mx
    top = 2 * fmt.min_normal_significand
    if not (abs(Mx) <= abs(Mz) <= top or b * abs(Mz) == b**p <= top):
        raise PreconditionError("significand-order", f"|M_x|={abs(Mx)} and |M_z|={abs(Mz)} out of order")
    return next_divisor_in_bounds(fmt.min_normal_significand, int(scaled_z), Mx, window)


def select_z(fmt: FloatFormat, x: Float, Z: FloatInterval) -> Float:
    """First endpoint of Z under which the fast search is complete."""
    failure = None
    for z in dict.fromkeys((Z.lo, Z.hi)):
        if not fmt.is_normal(z):
            failure = failure or PreconditionError("z-normal", f"{z!r} is not normal")
            continue
        tick()
        quotient = abs(z.value / x.value)
        if not fmt.min_normal_value <= quotient <= fmt.max_value:
            failure = failure or PreconditionError("quotient-range", f"|z/x| = {quotient} out of range")
            continue
        if fmt.beta != 2 and not 1 < normalized_significand(fmt, z) <= 2:
            failure = failure or PreconditionError("leading-digit", "need beta = 2 or 1 < |m_z| <= 2")
            continue
        return z
    raise failure


def _scaled_float(fmt: FloatFormat, M: int, q: int) -> Optional[Float]:
    try:
        return fmt.make(M, q)
    except NotRepresentableError:
        return None


def next_feasible(fmt: FloatFormat, mode: Rounding, x: Float, Z: Optional[FloatInterval]) -> Float:
    """Least feasible float >= x (or +inf when there is none)."""
    if Z is None:
        raise DomainError("empty Z")
    if is_feasible(fmt, mode, x, Z)[0]:
        return x
    if not mode.is_regular:
        raise PreconditionError("regular", f"{mode.name} is not a regular rounding")
    if not fmt.is_normal(x):
        raise PreconditionError("x-normal", f"{x!r} is not normal")
    z = select_z(fmt, x, Z)
    Mx, q = x.M, x.q
    Mb = next_plausible(fmt, mode, Mx, z, Z)
    cand = _scaled_float(fmt, Mb, q)
    if cand is not None and is_feasible(fmt, mode, cand, Z)[0]:
        return cand
    if Mx < 0:
        Mc = next_plausible(fmt, mode, -Mx, z, Z)
        cand = _scaled_float(fmt, Mc, q)
        if cand is not None and is_feasible(fmt, mode, cand, Z)[0]:
            return cand
    return fmt.pos_inf


def prev_feasible(fmt: FloatFormat, mode: Rounding, x: Float, Z: Optional[FloatInterval]) -> Float:
    """Greatest feasible float <= x (or -inf when there is none)."""
    if Z is None:
        raise DomainError("empty Z")
    return -next_feasible(fmt, mode, -x, Z)
