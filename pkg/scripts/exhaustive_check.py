"""Compare next_feasible with the brute-force oracle on every admissible (x, Z).

Usage: python3 scripts/exhaustive_check.py [p ...]   (default 3 4 5; format (2,p,-4,4))
"""

import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

from test_acceptance import REGULAR, exhaustive_next_feasible  # noqa: E402

from fpfactor.floats import FloatFormat  # noqa: E402

for p in map(int, sys.argv[1:] or ["3", "4", "5"]):
    fmt = FloatFormat(2, p, -4, 4)
    for mode in REGULAR:
        start = time.perf_counter()
        checked, bad = exhaustive_next_feasible(fmt, mode)
        print(f"p={p} {mode.name}: {checked} cases, {bad} mismatches, {time.perf_counter() - start:.1f} s",
              flush=True)
