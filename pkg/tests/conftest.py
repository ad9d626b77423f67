from fractions import Fraction

import pytest
from hypothesis import settings

from fpfactor.floats import FloatFormat, FloatInterval
from fpfactor.rounding import Rounding

settings.register_profile("default", deadline=None, database=None)
settings.load_profile("default")

TINY = FloatFormat(2, 3, -2, 1)       # 41 floats
DECIMAL = FloatFormat(10, 3, -1, 2)   # 7401 floats
REGULAR = (Rounding.RD, Rounding.RU, Rounding.RNE)


def fv(fmt, text):
    """Float with the exact value of a decimal or fraction literal."""
    return fmt.from_value(Fraction(text))


def fi(fmt, lo, hi=None):
    return FloatInterval(fv(fmt, lo), fv(fmt, lo if hi is None else hi))


def all_small_intervals(fmt, floats):
    """Every singleton and every two-element float interval."""
    n = len(floats)
    return ([FloatInterval(floats[i], floats[i]) for i in range(n)]
            + [FloatInterval(floats[i], floats[i + 1]) for i in range(n - 1)])


def fmt_id(fmt):
    return f"b{fmt.beta}p{fmt.p}e{fmt.emax}"


_ACCEPTANCE = pytest.StashKey[dict]()


@pytest.fixture
def acceptance(request):
    """Record an acceptance criterion outcome, then assert it."""
    results = request.config.stash.setdefault(_ACCEPTANCE, {})

    def record(n, ok, detail):
        results[n] = (ok, detail)
        assert ok, detail
    return record


def pytest_terminal_summary(terminalreporter, config):
    results = config.stash.get(_ACCEPTANCE, {})
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            ok, detail = results[n]
            terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}")
