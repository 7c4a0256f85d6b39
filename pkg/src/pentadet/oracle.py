"""Dense determinants used as ground truth for the structured routes."""
from __future__ import annotations

import math
from fractions import Fraction
from math import lcm
from typing import NamedTuple, Sequence

import numpy as np

from .model import DenseMatrix


class LogDet(NamedTuple):
    """Determinant as ``sign * exp(logabs)``; ``(0, -inf)`` for singular input."""

    sign: int
    logabs: float

    @classmethod
    def of(cls, x) -> "LogDet":
        if x == 0:
            return cls(0, -math.inf)
        return cls(1 if x > 0 else -1, _log_abs(x))

    def __mul__(self, other: "LogDet") -> "LogDet":
        if self.sign == 0 or other.sign == 0:
            return LogDet(0, -math.inf)
        return LogDet(self.sign * other.sign, self.logabs + other.logabs)

    def __pow__(self, e: int) -> "LogDet":
        if e == 0:
            return LogDet(1, 0.0)
        if self.sign == 0:
            return self
        return LogDet(self.sign ** e, self.logabs * e)


def _log_abs(x) -> float:
    if isinstance(x, Fraction):
        # big rationals overflow float(); logs of the parts do not
        return math.log(abs(x.numerator)) - math.log(x.denominator)
    return math.log(abs(x))


def log_product(factors) -> LogDet:
    out = LogDet(1, 0.0)
    for f in factors:
        out = out * LogDet.of(f)
    return out


def _as_rows(m) -> list[list]:
    if isinstance(m, DenseMatrix):
        return m.rows()
    return [list(row) for row in m]


def det_exact_dense(m: DenseMatrix | Sequence[Sequence]) -> Fraction:
    """Exact determinant by fraction-free (Bareiss) elimination.

    Each row is first scaled to integers by the lcm of its denominators, the
    integer determinant is computed with exact divisions only, and the scale
    is divided back out at the end.
    """
    rows = _as_rows(m)
    n = len(rows)
    if n == 0:
        return Fraction(1)
    scale = 1
    a: list[list[int]] = []
    for row in rows:
        fr = [Fraction(x) for x in row]
        den = lcm(*(x.denominator for x in fr))
        scale *= den
        a.append([int(x * den) for x in fr])

    sign = 1
    prev = 1
    for c in range(n - 1):
        if a[c][c] == 0:
            swap = next((i for i in range(c + 1, n) if a[i][c] != 0), None)
            if swap is None:
                return Fraction(0)
            a[c], a[swap] = a[swap], a[c]
            sign = -sign
        piv = a[c][c]
        row_c = a[c]
        for i in range(c + 1, n):
            row_i = a[i]
            aic = row_i[c]
            for j in range(c + 1, n):
                row_i[j] = (piv * row_i[j] - aic * row_c[j]) // prev
            row_i[c] = 0
        prev = piv
    return Fraction(sign * a[n - 1][n - 1], scale)


def det_float_dense(m: DenseMatrix | Sequence[Sequence] | np.ndarray) -> LogDet:
    """Sign and log-magnitude of the determinant via LU with partial pivoting.

    The pivot is the entry of largest magnitude in the column; ties go to
    the lowest row index.
    """
    a = np.array(m.entries if isinstance(m, DenseMatrix) else m, dtype=float)
    n = a.shape[0]
    sign = 1
    logabs = 0.0
    for c in range(n):
        col = np.abs(a[c:, c])
        i = c + int(np.argmax(col))
        piv = a[i, c]
        if piv == 0.0:
            return LogDet(0, -math.inf)
        if i != c:
            a[[c, i]] = a[[i, c]]
            sign = -sign
        if piv < 0:
            sign = -sign
        logabs += math.log(abs(piv))
        if c + 1 < n:
            mult = a[c + 1:, c] / piv
            a[c + 1:, c + 1:] -= np.outer(mult, a[c, c + 1:])
    return LogDet(sign, logabs)
