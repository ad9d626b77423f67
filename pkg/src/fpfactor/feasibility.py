"""Decision procedures: factors, feasibility, infeasibility cases, plausibility.

A float x is a factor of z when x (x) y = z for some float y, and feasible for
a float interval Z when it is a factor of some member of Z. For finite
nonzero x and finite z, a witness exists iff one of the two roundings of z/x
is one.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from typing import Optional

from .errors import DomainError, PreconditionError
from .exact import RealInterval, floor_log, interval_scale_shift, rat_mod, tick
from .floats import Float, FloatFormat, FloatInterval, power
from .rounding import Rounding, fp_multiply, preimage_interval, round_down, round_up


def _infinite_witness(fmt: FloatFormat, x: Float, Z: FloatInterval) -> Optional[Float]:
    # x (x) (+-inf) = sign(x) * (+-inf) for nonzero x.
    if fmt.pos_inf in Z:
        return fmt.pos_inf if x.sign > 0 else fmt.neg_inf
    if fmt.neg_inf in Z:
        return fmt.neg_inf if x.sign > 0 else fmt.pos_inf
    return None


def is_feasible(fmt: FloatFormat, mode: Rounding, x: Float, Z: Optional[FloatInterval]) -> tuple[bool, Optional[Float]]:
    """Whether x is a factor of some member of Z, with a witness y."""
    if Z is None:
        raise DomainError("feasibility for an empty interval")
    if x.is_zero:
        # 0 (x) y = 0 for every finite y, and is undefined for infinite y.
        return (True, fmt.zero) if fmt.zero in Z else (False, None)
    w = _infinite_witness(fmt, x, Z)
    if w is not None:
        return True, w
    if x.is_inf:
        return False, None
    if fmt.zero in Z:
        return True, fmt.zero
    # Z is now a set of finite nonzero floats of one sign, and any single
    # member decides the question.
    tick()
    quotient = Z.lo.value / x.value
    for y in (round_down(fmt, quotient), round_up(fmt, quotient)):
        if fp_multiply(fmt, mode, x, y) in Z:
            return True, y
    return False, None


def is_factor(fmt: FloatFormat, mode: Rounding, x: Float, z: Float) -> tuple[bool, Optional[Float]]:
    return is_feasible(fmt, mode, x, FloatInterval(z, z))


class InfeasibilityCase(enum.Enum):
    SUBNORMAL_QUOTIENT = "subnormal-quotient"
    POWER_NUMERATOR = "power-numerator"
    NARROW_Z = "narrow-z"
    NOT_APPLICABLE = "not-applicable"


def normalized_significand(fmt: FloatFormat, x: Float) -> Fraction:
    """|x| / beta**E(x); lies in [1, beta) for normal x."""
    return abs(x.value) / power(fmt.beta, fmt.exponent_of(x.value))


def classify_infeasibility(fmt: FloatFormat, mode: Rounding, x: Float, z: Float,
                           Z: FloatInterval) -> InfeasibilityCase:
    """Which of the three possible reasons explains why x is infeasible for Z."""
    if not mode.is_regular:
        raise PreconditionError("regular", f"{mode.name} is not a regular rounding")
    if not x.is_finite or x.is_zero:
        raise PreconditionError("x-finite-nonzero")
    if z not in Z or not z.is_finite:
        raise PreconditionError("z-in-Z")
    quotient = abs(z.value / x.value)
    if quotient > fmt.max_value:
        raise PreconditionError("quotient-range")
    if is_feasible(fmt, mode, x, Z)[0]:
        return InfeasibilityCase.NOT_APPLICABLE
    if quotient < fmt.min_normal_value:
        return InfeasibilityCase.SUBNORMAL_QUOTIENT
    m_x, m_z = normalized_significand(fmt, x), normalized_significand(fmt, z)
    width = preimage_interval(fmt, mode, Z).diameter()
    step = power(fmt.beta, fmt.quantum_of(z.value))
    if m_z == 1 < m_x and width < step:
        return InfeasibilityCase.POWER_NUMERATOR
    if m_x < m_z and width < step * fmt.beta:
        return InfeasibilityCase.NARROW_Z
    raise AssertionError(f"infeasible x={x!r} for Z={Z!r} fits no known case")


def scaled_target(fmt: FloatFormat, mode: Rounding, z: Float, Z: FloatInterval, k: int) -> RealInterval:
    """(fl^-1[Z] - z) * beta**(p - 1 - Q(z) - k): admissible remainder window."""
    shift = fmt.p - 1 - fmt.quantum_of(z.value) - k
    return interval_scale_shift(preimage_interval(fmt, mode, Z), power(fmt.beta, shift),
                                -z.value * power(fmt.beta, shift))


def is_plausible(fmt: FloatFormat, mode: Rounding, M: int, z: Float, Z: FloatInterval) -> bool:
    """Integer analogue of feasibility for the significand M."""
    if M == 0:
        raise DomainError("plausibility of a zero significand")
    if not z.is_finite or z.is_zero or z not in Z:
        raise DomainError("z must be a finite nonzero member of Z")
    b = fmt.beta
    Mz = z.value / power(b, fmt.quantum_of(z.value))
    k = floor_log(abs(Mz / M), b)
    window = scaled_target(fmt, mode, z, Z, 0)
    numer = Mz * b ** (fmt.p - 1)
    modulus = M * power(b, k)
    return -rat_mod(numer, modulus) in window or rat_mod(-numer, modulus) in window
