"""Bounds for x (x) y = 5.00 in a 3-digit decimal format under round-down."""

import time

from fpfactor.cli import format_interval
from fpfactor.floats import FloatFormat
from fpfactor.propagator import solve_mul_constraint
from fpfactor.rounding import Rounding

fmt = FloatFormat(10, 3, -1, 2)
X = fmt.interval("2.20", "2.50")
Y = fmt.interval("1.00", "2.50")
Z = fmt.interval("5.00", "5.00")

start = time.perf_counter()
r = solve_mul_constraint(fmt, Rounding.RD, X, Y, Z)
elapsed = time.perf_counter() - start

print(f"format {fmt}, RD")
print(f"x in {format_interval(fmt, r.x_bounds)}  optimal={r.x_optimal}")
print(f"y in {format_interval(fmt, r.y_bounds)}  optimal={r.y_optimal}")
print(f"z in {format_interval(fmt, r.z_bounds)}  optimal={r.z_optimal}")
print(f"{elapsed * 1000:.1f} ms")
