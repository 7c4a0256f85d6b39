"""Toeplitz and imperfect Toeplitz determinants.

``D(m)`` denotes the determinant of the order-``m`` 1,2-pentadiagonal
Toeplitz matrix with parameters ``(L, l, d, r, R)``.  The k,2k determinant
of order ``n + 1 = k*q + p`` is ``D(q+1)**p * D(q)**(k-p)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ShapeError
from .model import ImperfectSpec, ToeplitzSpec, shape_of
from .oracle import LogDet


@dataclass(frozen=True)
class DSequence:
    """Values ``D(-2), D(-1), ..., D(m)``; index with the order itself."""

    values: tuple

    @property
    def m(self) -> int:
        return len(self.values) - 3

    def __getitem__(self, n: int):
        if not -2 <= n <= self.m:
            raise IndexError(f"D({n}) outside -2..{self.m}")
        return self.values[n + 2]

    def __len__(self) -> int:
        return len(self.values)


def _coefficients(params):
    L, l, d, r, R = params
    LR, lr = L * R, l * r
    return (
        d,
        LR - lr,
        L * r * r + R * l * l - 2 * d * LR,
        LR * (LR - lr),
        d * LR * LR,
        -LR * LR * LR,
    )


def _initial(params):
    L, l, d, r, R = params
    one = d ** 0  # unit of the scalar type
    return [0 * d, 0 * d, one, d, d * d - l * r,
            d ** 3 - d * (L * R + 2 * l * r) + L * r * r + R * l * l]


def d_sequence(params, m: int) -> DSequence:
    """``D(-2) .. D(m)`` from the cubic start value and the seven-term recursion."""
    if m < 0:
        raise ValueError("m must be non-negative")
    vals = _initial(params)
    c1, c2, c3, c4, c5, c6 = _coefficients(params)
    for _ in range(4, m + 1):
        v = vals
        vals.append(c1 * v[-1] + c2 * v[-2] + c3 * v[-3] + c4 * v[-4] + c5 * v[-5] + c6 * v[-6])
    return DSequence(tuple(vals[: m + 3]))


def imperfect_sequence(dseq: DSequence, alpha, beta) -> DSequence:
    """``D(m) - (alpha+beta) D(m-1) + alpha*beta D(m-2)`` for ``m >= 0``."""
    s, t = alpha + beta, alpha * beta
    vals = list(dseq.values[:2])
    for n in range(0, dseq.m + 1):
        vals.append(dseq[n] - s * dseq[n - 1] + t * dseq[n - 2])
    return DSequence(tuple(vals))


_RESCALE_LOG10 = 150.0


def _scaled_window(params, m: int) -> tuple[list[float], float]:
    """Float recursion with periodic renormalisation.

    Returns ``(w, logscale)`` where ``w[i] * exp(logscale)`` is
    ``D(m - 5 + i)``; entries for negative orders are zero.  One step can
    grow the window by at most ``1 + sum(|c_i|)``, which fixes how many steps
    may run between rescalings without overflow.
    """
    params = tuple(float(x) for x in params)
    c1, c2, c3, c4, c5, c6 = _coefficients(params)
    v0, v1, v2, v3, v4, v5 = _initial(params)
    growth = math.log10(1.0 + sum(abs(c) for c in (c1, c2, c3, c4, c5, c6)))
    chunk = max(1, int(_RESCALE_LOG10 / growth)) if growth > 0 else m
    logscale = 0.0
    step = 4
    while step <= m:
        stop = min(m + 1, step + chunk)
        for _ in range(step, stop):
            v0, v1, v2, v3, v4, v5 = v1, v2, v3, v4, v5, (
                c1 * v5 + c2 * v4 + c3 * v3 + c4 * v2 + c5 * v1 + c6 * v0)
        step = stop
        a = max(abs(v0), abs(v1), abs(v2), abs(v3), abs(v4), abs(v5))
        if a > 0.0 and not (1e-100 < a < 1e100):
            v0, v1, v2, v3, v4, v5 = (x / a for x in (v0, v1, v2, v3, v4, v5))
            logscale += math.log(a)
    w = [v0, v1, v2, v3, v4, v5]
    if m < 3:
        w = ([0.0] * 6 + w[: m + 3])[-6:]
    return w, logscale


def _slog(x: float, logscale: float) -> LogDet:
    if x == 0.0:
        return LogDet(0, -math.inf)
    return LogDet(1 if x > 0 else -1, math.log(abs(x)) + logscale)


# -- k,2k determinants -------------------------------------------------------------

def det_toeplitz(spec: ToeplitzSpec):
    shape = shape_of(spec.n, spec.k)
    q, p = shape.q, shape.p
    seq = d_sequence(spec.params, q + 1)
    return seq[q + 1] ** p * seq[q] ** (spec.k - p)


def det_imperfect(spec: ImperfectSpec):
    shape = shape_of(spec.n, spec.k)
    q, p = shape.q, shape.p
    seq = imperfect_sequence(d_sequence(spec.base.params, q + 1), spec.alpha, spec.beta)
    return seq[q + 1] ** p * seq[q] ** (spec.k - p)


def slogdet_toeplitz(spec: ToeplitzSpec) -> LogDet:
    """Float mode; the k-fold powers are taken in log space."""
    shape = shape_of(spec.n, spec.k)
    q, p = shape.q, shape.p
    w, ls = _scaled_window(spec.params, q + 1)
    return _slog(w[5], ls) ** p * _slog(w[4], ls) ** (spec.k - p)


def slogdet_imperfect(spec: ImperfectSpec) -> LogDet:
    shape = shape_of(spec.n, spec.k)
    q, p = shape.q, shape.p
    w, ls = _scaled_window(spec.base.params, q + 1)
    s, t = float(spec.alpha + spec.beta), float(spec.alpha * spec.beta)
    top = w[5] - s * w[4] + t * w[3]
    low = w[4] - s * w[3] + t * w[2]
    return _slog(top, ls) ** p * _slog(low, ls) ** (spec.k - p)


def _require_q3(n: int, k: int):
    shape = shape_of(n, k)
    if shape.q != 3:
        raise ShapeError(f"closed form needs n+1 = 3k+p; got q={shape.q}")
    return shape


def q3_toeplitz_factors(params) -> tuple:
    """``(quartic, cubic)``: the order-4 and order-3 block determinants."""
    L, l, d, r, R = params
    quartic = (d ** 4 - (3 * l * r + 2 * L * R) * d ** 2 + (2 * L * r ** 2 + 2 * R * l ** 2) * d
               + L ** 2 * R ** 2 - 2 * L * R * l * r + l ** 2 * r ** 2)
    cubic = d ** 3 - (2 * l * r + L * R) * d + L * r ** 2 + R * l ** 2
    return quartic, cubic


def q3_imperfect_factors(params, alpha, beta) -> tuple:
    """Imperfect counterparts of :func:`q3_toeplitz_factors`.

    Obtained by substituting ``d - alpha`` into the head and ``d - beta``
    into the tail of each fourteen-term and six-term factor.
    """
    L, l, d, r, R = params
    s, t = alpha + beta, alpha * beta
    lr, LR = l * r, L * R
    side = L * r ** 2 + R * l ** 2
    quartic = (d ** 4 - s * d ** 3 - (3 * lr + 2 * LR - t) * d ** 2
               + (2 * side + s * (2 * lr + LR)) * d
               + LR ** 2 - 2 * LR * lr + lr ** 2 - s * side - t * lr)
    cubic = d ** 3 - s * d ** 2 - (2 * lr + LR - t) * d + side + s * lr
    return quartic, cubic


def det_q3_toeplitz_closed(spec: ToeplitzSpec):
    shape = _require_q3(spec.n, spec.k)
    quartic, cubic = q3_toeplitz_factors(spec.params)
    return quartic ** shape.p * cubic ** (spec.k - shape.p)


def det_q3_imperfect_closed(spec: ImperfectSpec):
    shape = _require_q3(spec.n, spec.k)
    quartic, cubic = q3_imperfect_factors(spec.base.params, spec.alpha, spec.beta)
    return quartic ** shape.p * cubic ** (spec.k - shape.p)
