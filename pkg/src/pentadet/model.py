"""Matrix descriptions for k,2k-pentadiagonal matrices.

A matrix of order ``n + 1`` carries its main diagonal ``d`` and four bands:
``l``/``r`` at distance ``k`` below/above the diagonal and ``L``/``R`` at
distance ``2k``.  Entries are numbered from zero; the sub-diagonal bands are
indexed by column and the super-diagonal bands by row, so that

    a[i][j] = L[j]  if j - i == -2k
              l[j]  if j - i == -k
              d[i]  if j == i
              r[i]  if j - i == k
              R[i]  if j - i == 2k

Scalars may be anything supporting ``+ - * /`` and comparison with zero;
the package is exercised with :class:`fractions.Fraction` and ``float``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence, Union

from .errors import SchemaError, ShapeError

Scalar = Any


@dataclass(frozen=True)
class Shape:
    """Decomposition ``n + 1 = k*q + p`` with ``0 <= p < k``."""

    q: int
    p: int


@dataclass(frozen=True)
class PentaSpec:
    n: int
    k: int
    L: tuple
    l: tuple
    d: tuple
    r: tuple
    R: tuple

    def __post_init__(self):
        for name in ("L", "l", "d", "r", "R"):
            object.__setattr__(self, name, tuple(getattr(self, name)))

    @property
    def order(self) -> int:
        return self.n + 1

    def swapped(self) -> "PentaSpec":
        """Spec of the transposed matrix (L<->R, l<->r)."""
        return PentaSpec(self.n, self.k, self.R, self.r, self.d, self.l, self.L)

    def map(self, f) -> "PentaSpec":
        """Apply ``f`` to every scalar entry."""
        return PentaSpec(
            self.n, self.k,
            *(tuple(f(x) for x in v) for v in (self.L, self.l, self.d, self.r, self.R)),
        )


@dataclass(frozen=True)
class ToeplitzSpec:
    n: int
    k: int
    L: Scalar
    l: Scalar
    d: Scalar
    r: Scalar
    R: Scalar

    @property
    def params(self) -> tuple:
        return (self.L, self.l, self.d, self.r, self.R)

    def map(self, f) -> "ToeplitzSpec":
        return ToeplitzSpec(self.n, self.k, *(f(x) for x in self.params))


@dataclass(frozen=True)
class ImperfectSpec:
    """Toeplitz matrix whose first ``k`` diagonal entries are ``d - alpha``
    and last ``k`` entries are ``d - beta``."""

    base: ToeplitzSpec
    alpha: Scalar
    beta: Scalar

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def k(self) -> int:
        return self.base.k

    def map(self, f) -> "ImperfectSpec":
        return ImperfectSpec(self.base.map(f), f(self.alpha), f(self.beta))


AnySpec = Union[PentaSpec, ToeplitzSpec, ImperfectSpec]


@dataclass(frozen=True)
class DenseMatrix:
    entries: tuple

    def __post_init__(self):
        rows = tuple(tuple(row) for row in self.entries)
        if any(len(row) != len(rows) for row in rows):
            raise ValueError("matrix must be square")
        object.__setattr__(self, "entries", rows)

    @property
    def order(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def transpose(self) -> "DenseMatrix":
        return DenseMatrix(tuple(zip(*self.entries)))

    def rows(self) -> list[list]:
        """Mutable copy of the entries."""
        return [list(row) for row in self.entries]


def shape_of(n: int, k: int) -> Shape:
    """Check ``1 <= k`` and ``2k <= n`` and return ``(q, p)``."""
    if not (isinstance(n, int) and isinstance(k, int)):
        raise ShapeError(f"n and k must be integers, got n={n!r}, k={k!r}")
    if k < 1 or 2 * k > n:
        raise ShapeError(f"need 1 <= k and 2k <= n, got n={n}, k={k}")
    q, p = divmod(n + 1, k)
    return Shape(q, p)


def validate_shape(spec: PentaSpec) -> Shape:
    shape = shape_of(spec.n, spec.k)
    n, k = spec.n, spec.k
    expected = {"L": n + 1 - 2 * k, "l": n + 1 - k, "d": n + 1, "r": n + 1 - k, "R": n + 1 - 2 * k}
    for name, length in expected.items():
        got = len(getattr(spec, name))
        if got != length:
            raise ShapeError(f"diagonal {name} has length {got}, expected {length}")
    return shape


def assemble_dense(spec: PentaSpec, zero: Scalar = 0, *, check: bool = True) -> DenseMatrix:
    """Dense matrix of the spec.

    ``check=False`` skips the ``2k <= n`` requirement so that small blocks
    (e.g. order-2 tridiagonal pieces with empty outer bands) can be built.
    """
    if check:
        validate_shape(spec)
    n, k = spec.n, spec.k
    a = [[zero] * (n + 1) for _ in range(n + 1)]
    for i in range(n + 1):
        a[i][i] = spec.d[i]
    for j in range(n + 1 - k):
        a[j + k][j] = spec.l[j]
        a[j][j + k] = spec.r[j]
    for j in range(n + 1 - 2 * k):
        a[j + 2 * k][j] = spec.L[j]
        a[j][j + 2 * k] = spec.R[j]
    return DenseMatrix(a)


def imperfect_diagonal(spec: ImperfectSpec) -> tuple:
    n, k, d = spec.n, spec.k, spec.base.d
    return (d - spec.alpha,) * k + (d,) * (n + 1 - 2 * k) + (d - spec.beta,) * k


def lower_to_general(spec: ToeplitzSpec | ImperfectSpec) -> PentaSpec:
    base = spec.base if isinstance(spec, ImperfectSpec) else spec
    n, k = base.n, base.k
    shape_of(n, k)
    if isinstance(spec, ImperfectSpec):
        diag = imperfect_diagonal(spec)
    else:
        diag = (base.d,) * (n + 1)
    return PentaSpec(
        n, k,
        L=(base.L,) * (n + 1 - 2 * k),
        l=(base.l,) * (n + 1 - k),
        d=diag,
        r=(base.r,) * (n + 1 - k),
        R=(base.R,) * (n + 1 - 2 * k),
    )


def as_general(spec: AnySpec) -> PentaSpec:
    return spec if isinstance(spec, PentaSpec) else lower_to_general(spec)


# -- JSON -------------------------------------------------------------------

def parse_scalar(value) -> Fraction:
    """Read a JSON number or a ``"p/q"`` string as an exact rational."""
    if isinstance(value, bool):
        raise SchemaError(f"not a scalar: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        # decimal literal as written, not the binary float
        return Fraction(repr(value))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise SchemaError(f"bad scalar string {value!r}") from exc
    raise SchemaError(f"not a scalar: {value!r}")


def format_scalar(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _int_field(obj: dict, name: str) -> int:
    if name not in obj:
        raise SchemaError(f"missing field {name!r}")
    v = obj[name]
    if isinstance(v, bool) or not isinstance(v, int):
        raise SchemaError(f"field {name!r} must be an integer")
    return v


def _scalar_field(obj: dict, name: str, default=None) -> Fraction:
    if name not in obj:
        if default is not None:
            return default
        raise SchemaError(f"missing field {name!r}")
    return parse_scalar(obj[name])


def spec_from_dict(obj: dict) -> AnySpec:
    """Build a spec from the JSON object form used by the CLI.

    Only structural problems raise :class:`SchemaError`; shape violations
    are left to :func:`validate_shape`.
    """
    if not isinstance(obj, dict):
        raise SchemaError("top-level JSON value must be an object")
    kind = obj.get("type")
    n, k = _int_field(obj, "n"), _int_field(obj, "k")
    if kind == "general":
        vectors = {}
        for name in ("L", "l", "d", "r", "R"):
            v = obj.get(name)
            if not isinstance(v, list):
                raise SchemaError(f"field {name!r} must be a list")
            vectors[name] = tuple(parse_scalar(x) for x in v)
        return PentaSpec(n, k, **vectors)
    if kind in ("toeplitz", "imperfect"):
        base = ToeplitzSpec(n, k, *(_scalar_field(obj, name) for name in ("L", "l", "d", "r", "R")))
        if kind == "toeplitz":
            return base
        return ImperfectSpec(base, _scalar_field(obj, "alpha"), _scalar_field(obj, "beta"))
    raise SchemaError(f"unknown spec type {kind!r}")


def spec_to_dict(spec: AnySpec) -> dict:
    if isinstance(spec, PentaSpec):
        out: dict = {"type": "general", "n": spec.n, "k": spec.k}
        for name in ("L", "l", "d", "r", "R"):
            out[name] = [format_scalar(x) for x in getattr(spec, name)]
        return out
    base = spec.base if isinstance(spec, ImperfectSpec) else spec
    out = {"type": "imperfect" if isinstance(spec, ImperfectSpec) else "toeplitz", "n": base.n, "k": base.k}
    for name, x in zip(("L", "l", "d", "r", "R"), base.params):
        out[name] = format_scalar(x)
    if isinstance(spec, ImperfectSpec):
        out["alpha"] = format_scalar(spec.alpha)
        out["beta"] = format_scalar(spec.beta)
    return out


def load_spec(text: str) -> AnySpec:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from exc
    return spec_from_dict(obj)


def diagonals(n: int, k: int, L: Sequence, l: Sequence, d: Sequence, r: Sequence, R: Sequence) -> PentaSpec:
    """Convenience constructor that validates immediately."""
    spec = PentaSpec(n, k, L, l, d, r, R)
    validate_shape(spec)
    return spec
