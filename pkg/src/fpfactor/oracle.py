"""Brute-force ground truth for small formats.

Every finite float is an integer multiple of a common unit, so products of
floats are integers in a (squared) unit and can be rounded by binary search
over the sorted list of float values. This rounding is written separately
from the analytic one in :mod:`fpfactor.rounding` so that the two check each
other.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Optional

import numpy as np

from .errors import ResourceError
from .floats import Float, FloatFormat, FloatInterval, enumeration_cap
from .propagator import PropagationResult
from .rounding import Rounding

# Beyond this many entries the full product table is not materialized.
TABLE_CAP = 6 * 10**7
UNDEFINED = -1


class Oracle:
    """Exhaustive evaluator for one format and rounding mode."""

    def __init__(self, fmt: FloatFormat, mode: Rounding, cap: Optional[int] = None):
        self.fmt, self.mode = fmt, mode
        self.floats = fmt.enumerate_floats(cap)
        self.index = {x: i for i, x in enumerate(self.floats)}
        n = len(self.floats)
        self.n = n
        b, qmin = fmt.beta, fmt.qmin
        # Keys are values in the unit beta**s; both floats and their products
        # are integers there.
        s = min(qmin, 2 * qmin)
        sig = [x.M * b ** (x.q - qmin) for x in self.floats[1:-1]]
        widest = max(abs(v) for v in sig) if sig else 0
        threshold2 = (2 * b ** (fmt.emax + 1) - b**fmt.qmax) * b ** -s  # twice the overflow magnitude
        fits = max(widest**2 * b ** (2 * qmin - s), threshold2, widest * b ** (qmin - s)) < 2**61
        dtype = np.int64 if fits else object
        self.sig = np.array(sig, dtype=dtype)
        self.keys = self.sig * b ** (qmin - s)
        self.prod_scale = b ** (2 * qmin - s)
        self.threshold2 = threshold2
        self.signs = np.array([x.sign for x in self.floats], dtype=np.int64)
        self.is_zero = np.array([x.is_zero for x in self.floats])
        self._table: Optional[np.ndarray] = None
        self.index_dtype = np.int16 if n < 2**15 else np.int32

    def _round(self, P: np.ndarray) -> np.ndarray:
        """Global indices of fl(P) for product keys P."""
        keys, mode = self.keys, self.mode
        last = len(keys) - 1
        down = np.searchsorted(keys, P, side="right") - 1   # -1 means below min F
        up = np.searchsorted(keys, P, side="left")          # len means above max F
        if mode is Rounding.RD:
            return down + 1
        if mode is Rounding.RU:
            return up + 1
        if mode is Rounding.CLAMPED_RD:
            return np.where(P > keys[last], self.n - 1, down + 1)
        # Nearest, ties to even, with overflow at the threshold.
        lo = np.clip(down, 0, last)
        hi = np.clip(up, 0, last)
        klo, khi = keys[lo], keys[hi]
        twice = 2 * P
        gap = np.where(khi > klo, khi - klo, 1)
        even_lo = (klo // gap) % 2 == 0
        pick_lo = (twice < klo + khi) | ((twice == klo + khi) & even_lo)
        res = np.where(pick_lo, lo, hi) + 1
        res = np.where(P > keys[last], np.where(twice >= self.threshold2, self.n - 1, self.n - 2), res)
        res = np.where(P < keys[0], np.where(-twice >= self.threshold2, 0, 1), res)
        return res

    def row(self, i: int, cols: slice = slice(None)) -> np.ndarray:
        """Global indices of floats[i] (x) y for y in floats[cols]; UNDEFINED for 0 * inf."""
        n = self.n
        j = np.arange(n)[cols]
        out = np.full(len(j), UNDEFINED, dtype=np.int64)
        x = self.floats[i]
        inf_y = (j == 0) | (j == n - 1)
        if x.is_inf:
            s = x.sign * self.signs[j]
            out[s > 0] = n - 1
            out[s < 0] = 0
            return out
        if not x.is_zero:
            s = x.sign * self.signs[j]
            out[inf_y & (s > 0)] = n - 1
            out[inf_y & (s < 0)] = 0
        fin = ~inf_y
        P = self.sig[i - 1] * self.sig[j[fin] - 1] * self.prod_scale
        out[fin] = self._round(P)
        return out

    @property
    def table(self) -> np.ndarray:
        if self._table is None:
            if self.n * self.n > TABLE_CAP:
                raise ResourceError(f"product table of {self.n}^2 entries is above {TABLE_CAP}")
            t = np.empty((self.n, self.n), dtype=self.index_dtype)
            for i in range(self.n):
                t[i] = self.row(i)
            self._table = t
        return self._table

    def bounds(self, Z: FloatInterval) -> tuple[int, int]:
        return self.index[Z.lo], self.index[Z.hi]

    def feasible_mask(self, Z: FloatInterval) -> np.ndarray:
        lo, hi = self.bounds(Z)
        t = self.table
        return ((t >= lo) & (t <= hi)).any(axis=1)

    def feasible(self, x: Float, Z: FloatInterval) -> bool:
        lo, hi = self.bounds(Z)
        r = self.row(self.index[x])
        return bool(((r >= lo) & (r <= hi)).any())

    def next_feasible(self, x: Float, Z: FloatInterval, upto: Optional[Float] = None) -> Optional[Float]:
        """Scan upward from x; +inf when nothing qualifies, None when stopped at upto."""
        stop = self.n if upto is None else self.index[upto] + 1
        for i in range(self.index[x], stop):
            if self.feasible(self.floats[i], Z):
                return self.floats[i]
        return self.fmt.pos_inf if upto is None else None

    def solve(self, X: FloatInterval, Y: FloatInterval, Z: FloatInterval,
              pair_cap: int = 10**8, use_table: bool = True) -> PropagationResult:
        xi, xj = self.bounds(X)
        yi, yj = self.bounds(Y)
        if (xj - xi + 1) * (yj - yi + 1) > pair_cap:
            raise ResourceError("box too large for the exhaustive solve")
        sub = self._block(xi, xj, yi, yj, use_table)
        zlo, zhi = self.bounds(Z)
        hit = (sub >= zlo) & (sub <= zhi)
        rows, cols = np.flatnonzero(hit.any(axis=1)), np.flatnonzero(hit.any(axis=0))
        if rows.size == 0:
            return PropagationResult(None, None, None, True, True, True)
        vals = sub[hit]
        f = self.floats
        return PropagationResult(FloatInterval(f[xi + rows[0]], f[xi + rows[-1]]),
                                 FloatInterval(f[yi + cols[0]], f[yi + cols[-1]]),
                                 FloatInterval(f[int(vals.min())], f[int(vals.max())]),
                                 True, True, True)

    def _block(self, xi: int, xj: int, yi: int, yj: int, use_table: bool) -> np.ndarray:
        if self._table is not None or (use_table and self.n * self.n <= TABLE_CAP):
            return self.table[xi:xj + 1, yi:yj + 1]
        return np.stack([self.row(i, slice(yi, yj + 1)) for i in range(xi, xj + 1)])


@lru_cache(maxsize=2)
def get_oracle(fmt: FloatFormat, mode: Rounding, cap: Optional[int] = None) -> Oracle:
    return Oracle(fmt, mode, enumeration_cap(cap))


def oracle_feasible(fmt: FloatFormat, mode: Rounding, x: Float, Z: FloatInterval,
                    cap: Optional[int] = None) -> bool:
    return get_oracle(fmt, mode, cap).feasible(x, Z)


def oracle_next_feasible(fmt: FloatFormat, mode: Rounding, x: Float, Z: FloatInterval,
                         cap: Optional[int] = None) -> Float:
    return get_oracle(fmt, mode, cap).next_feasible(x, Z)


def oracle_prev_feasible(fmt: FloatFormat, mode: Rounding, x: Float, Z: FloatInterval,
                         cap: Optional[int] = None) -> Float:
    o = get_oracle(fmt, mode, cap)
    for i in range(o.index[x], -1, -1):
        if o.feasible(o.floats[i], Z):
            return o.floats[i]
    return fmt.neg_inf


def oracle_solve(fmt: FloatFormat, mode: Rounding, X: FloatInterval, Y: FloatInterval,
                 Z: FloatInterval, cap: Optional[int] = None) -> PropagationResult:
    return get_oracle(fmt, mode, cap).solve(X, Y, Z)


def exact_product_bounds(fmt: FloatFormat, mode: Rounding, X: FloatInterval, Y: FloatInterval,
                         Z: FloatInterval, pair_cap: int) -> Optional[FloatInterval]:
    """Exact hull of {x (x) y in Z : x in X, y in Y}; ResourceError when too large."""
    if fmt.count() > enumeration_cap(None):
        raise ResourceError("format above the enumeration cap")
    o = get_oracle(fmt, mode)
    return o.solve(X, Y, Z, pair_cap, use_table=False).z_bounds
