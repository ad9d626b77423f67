"""Preimages of 1 and 1.75 under RD, RU and RNE in the (2,3,-2,1) format."""

from fractions import Fraction

from fpfactor.exact import to_decimal_string
from fpfactor.floats import FloatFormat, FloatInterval
from fpfactor.rounding import Rounding, preimage_interval

fmt = FloatFormat(2, 3, -2, 1)


def show(I):
    lo = "[" if I.lo_closed else "("
    hi = "]" if I.hi_closed else ")"
    return f"{lo}{to_decimal_string(I.lo)}, {to_decimal_string(I.hi)}{hi}"


print("z\tmode\tpreimage\tdiameter")
for z in (Fraction(1), Fraction(7, 4)):
    x = fmt.from_value(z)
    for mode in (Rounding.RD, Rounding.RU, Rounding.RNE):
        I = preimage_interval(fmt, mode, FloatInterval(x, x))
        print(f"{to_decimal_string(z)}\t{mode.name}\t{show(I)}\t{I.diameter()}")
