"""Wall-clock and operation counts of next_feasible on binary64."""

import random
import statistics
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

from test_acceptance import REGULAR, precondition_inputs  # noqa: E402

from fpfactor.exact import count_operations  # noqa: E402
from fpfactor.feasibility import is_feasible  # noqa: E402
from fpfactor.floats import BINARY64  # noqa: E402
from fpfactor.solver import next_feasible  # noqa: E402

n = int(sys.argv[1]) if len(sys.argv) > 1 else 1000
rng = random.Random(11)
for mode in REGULAR:
    times, counts = [], []
    for x, Z in precondition_inputs(rng, BINARY64, n):
        start = time.perf_counter()
        with count_operations() as ops:
            r = next_feasible(BINARY64, mode, x, Z)
        times.append(time.perf_counter() - start)
        counts.append(ops.ops)
        assert r.is_inf or is_feasible(BINARY64, mode, r, Z)[0]
    print(f"{mode.name}: mean {statistics.mean(times) * 1e3:.3f} ms, "
          f"median {statistics.median(times) * 1e3:.3f} ms, max {max(times) * 1e3:.3f} ms, "
          f"max ops {max(counts)}")
