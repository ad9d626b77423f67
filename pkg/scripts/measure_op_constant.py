"""Largest operation count of next_feasible over random admissible inputs, p = 3..24.

Usage: python3 scripts/measure_op_constant.py [seeds] [per_mode]
"""

import random
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

from test_acceptance import REGULAR, precondition_inputs  # noqa: E402

from fpfactor.exact import count_operations  # noqa: E402
from fpfactor.floats import FloatFormat  # noqa: E402
from fpfactor.solver import next_feasible  # noqa: E402

seeds = int(sys.argv[1]) if len(sys.argv) > 1 else 5
per_mode = int(sys.argv[2]) if len(sys.argv) > 2 else 500
worst = 0
for seed in range(seeds):
    rng = random.Random(seed)
    for p in range(3, 25):
        fmt = FloatFormat(2, p, -126, 127)
        for mode in REGULAR:
            for x, Z in precondition_inputs(rng, fmt, per_mode):
                with count_operations() as ops:
                    next_feasible(fmt, mode, x, Z)
                worst = max(worst, ops.ops)
    print(f"seed {seed}: max ops so far {worst}", flush=True)
