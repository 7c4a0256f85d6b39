"""Band elimination on the diagonal vectors and the closed-form products.

The elimination clears the k-th and 2k-th sub/super-diagonals one group of
``k`` columns at a time.  The leading ``k x k`` block of every intermediate
trailing matrix is diagonal, so the pivots are just the iterated main
diagonal values and the determinant is their product.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import prod
from typing import Iterator

from .errors import PivotZero, ShapeError
from .model import PentaSpec, Shape, validate_shape


@dataclass
class IterationState:
    """Snapshot after elimination step ``s``.

    ``lcur``/``rcur``/``dcur`` hold only the live indices ``j >= s*k``;
    ``pivots`` are the finalized diagonal values in position order.
    """

    s: int
    lcur: dict = field(default_factory=dict)
    rcur: dict = field(default_factory=dict)
    dcur: dict = field(default_factory=dict)
    pivots: list = field(default_factory=list)


def _check_reduction_shape(spec: PentaSpec) -> Shape:
    shape = validate_shape(spec)
    if not (shape.q > 3 or (shape.q == 3 and shape.p > 0)):
        raise ShapeError(
            f"elimination route needs q > 3 or (q = 3, p > 0); got q={shape.q}, p={shape.p}"
        )
    return shape


def _steps(spec: PentaSpec, snapshots: bool = False) -> Iterator:
    """Run the elimination, yielding after every step.

    Yields an :class:`IterationState` when ``snapshots`` is set, otherwise
    ``None``; the generator's return value is the full pivot list.
    """
    n, k = spec.n, spec.k
    L, R = spec.L, spec.R
    l, r, d = list(spec.l), list(spec.r), list(spec.d)
    s = 1
    # step s divides by the pivots of group s-1, i.e. indices (s-1)k .. sk-1
    while s * k <= n:
        for i in range((s - 1) * k, min(s * k, n + 1 - k)):
            j = i + k
            piv = d[i]
            if piv == 0:
                raise PivotZero(i, s)
            li, ri = l[i], r[i]
            d[j] = d[j] - li * ri / piv
            if j <= n - k:
                r[j] = r[j] - R[i] * li / piv
                l[j] = l[j] - L[i] * ri / piv
                d[j + k] = d[j + k] - L[i] * R[i] / piv
        if snapshots:
            lo = s * k
            yield IterationState(
                s,
                {j: l[j] for j in range(lo, n + 1 - k)},
                {j: r[j] for j in range(lo, n + 1 - k)},
                {j: d[j] for j in range(lo, n + 1)},
                d[:lo],
            )
        else:
            yield None
        s += 1
    return d


def _eliminate(spec: PentaSpec) -> list:
    gen = _steps(spec)
    while True:
        try:
            next(gen)
        except StopIteration as stop:
            return stop.value


def iterate_diagonals(spec: PentaSpec, *, strict: bool = True) -> list:
    """Pivots ``d_0 .. d_{k-1}, d_k^(1) .. d_{2k-1}^(1), ...`` of the elimination.

    With ``strict=False`` the shape hypothesis (``q > 3`` or ``q = 3, p > 0``)
    is not enforced; the index groups are clipped to valid ranges either way.
    """
    if strict:
        _check_reduction_shape(spec)
    else:
        validate_shape(spec)
    return _eliminate(spec)


def iteration_states(spec: PentaSpec) -> Iterator[IterationState]:
    """Yield the state after every elimination step, then the final pivots.

    Lazy, so a zero divisor in a later step only surfaces when reached.
    Costs ``O(n)`` per step; meant for inspection.
    """
    _check_reduction_shape(spec)
    gen = _steps(spec, snapshots=True)
    last = 0
    while True:
        try:
            state = next(gen)
        except StopIteration as stop:
            yield IterationState(last + 1, pivots=list(stop.value))
            return
        last = state.s
        yield state


def det_via_reduction(spec: PentaSpec, *, strict: bool = True):
    shape = validate_shape(spec)
    piv = iterate_diagonals(spec, strict=strict)
    k, q, p = spec.k, shape.q, shape.p
    # grouped by residue class j mod k, longer chains first
    long_chains = prod(prod(piv[j + s * k] for s in range(q + 1)) for j in range(p))
    short_chains = prod(prod(piv[j + s * k] for s in range(q)) for j in range(p, k))
    return long_chains * short_chains


# -- closed forms --------------------------------------------------------------

def n_factor(spec: PentaSpec, j: int, _flip_sign: bool = False):
    """Six-term factor over indices ``j, j+k, j+2k``."""
    k = spec.k
    L, l, d, r, R = spec.L, spec.l, spec.d, spec.r, spec.R
    a, b, c = d[j], d[j + k], d[j + 2 * k]
    last = r[j] * L[j] * r[j + k]
    return (
        a * b * c
        - a * l[j + k] * r[j + k]
        - L[j] * R[j] * b
        - l[j] * r[j] * c
        + l[j] * R[j] * l[j + k]
        + (-last if _flip_sign else last)
    )


def m_factor(spec: PentaSpec, j: int):
    """Fourteen-term factor over indices ``j, j+k, j+2k, j+3k``."""
    k = spec.k
    L, l, d, r, R = spec.L, spec.l, spec.d, spec.r, spec.R
    d0, d1, d2, d3 = d[j], d[j + k], d[j + 2 * k], d[j + 3 * k]
    l0, l1, l2 = l[j], l[j + k], l[j + 2 * k]
    r0, r1, r2 = r[j], r[j + k], r[j + 2 * k]
    L0, L1 = L[j], L[j + k]
    R0, R1 = R[j], R[j + k]
    return (
        d0 * d1 * d2 * d3
        - d0 * d1 * l2 * r2
        - d0 * d2 * L1 * R1
        - d0 * d3 * l1 * r1
        - d1 * d3 * L0 * R0
        - d2 * d3 * l0 * r0
        + d0 * L1 * r1 * r2
        + d0 * R1 * l1 * l2
        + d3 * L0 * r0 * r1
        + d3 * R0 * l0 * l1
        + L0 * L1 * R0 * R1
        - L0 * R1 * l2 * r0
        - L1 * R0 * l0 * r2
        + l0 * l2 * r0 * r2
    )


def theorem1_factors(spec: PentaSpec, _flip_sign: bool = False) -> list:
    """Factors of the two-product formula valid for ``(n+1)/3 <= k <= n/2``."""
    shape = validate_shape(spec)
    n, k = spec.n, spec.k
    if not (shape.q == 2 or (shape.q == 3 and shape.p == 0)):
        raise ShapeError(f"two-product formula needs (n+1)/3 <= k <= n/2; got n={n}, k={k}")
    out = [n_factor(spec, j, _flip_sign) for j in range(n - 2 * k + 1)]
    out += [spec.d[j] * spec.d[j + k] - spec.l[j] * spec.r[j] for j in range(n + 1 - 2 * k, k)]
    return out


def det_theorem1(spec: PentaSpec, _flip_sign: bool = False):
    return prod(theorem1_factors(spec, _flip_sign))


def q3_factors(spec: PentaSpec, _flip_sign: bool = False) -> list:
    shape = validate_shape(spec)
    if shape.q != 3:
        raise ShapeError(f"q = 3 closed form needs n+1 = 3k+p; got q={shape.q}")
    return [m_factor(spec, j) for j in range(shape.p)] + [
        n_factor(spec, j, _flip_sign) for j in range(shape.p, spec.k)
    ]


def det_q3_general(spec: PentaSpec, _flip_sign: bool = False):
    return prod(q3_factors(spec, _flip_sign))
