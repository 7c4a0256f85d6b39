"""Sparse polynomials in ``L, l, d, r, R`` over the rationals.

Used to regenerate the determinant polynomials ``D(n)`` of 1,2-pentadiagonal
Toeplitz matrices symbolically and to compare them with the tabulated forms.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping

from .errors import RangeError
from .toeplitz import d_sequence

VARS = ("L", "l", "d", "r", "R")
_ZERO = (0, 0, 0, 0, 0)
# print order inside a monomial
_PRINT_ORDER = (0, 4, 1, 3, 2)


class MultiPoly:
    """Immutable polynomial stored as ``{(eL, el, ed, er, eR): coefficient}``.

    Zero coefficients are never stored.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[tuple, Rational] | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[tuple, Fraction] = {}
        for exps, c in items:
            exps = tuple(int(e) for e in exps)
            if len(exps) != 5 or min(exps) < 0:
                raise ValueError(f"bad exponent tuple {exps}")
            acc[exps] = acc.get(exps, Fraction(0)) + Fraction(c)
        self._terms = {e: c for e, c in acc.items() if c != 0}

    @classmethod
    def const(cls, c) -> "MultiPoly":
        return cls({_ZERO: c})

    @classmethod
    def var(cls, name: str) -> "MultiPoly":
        e = [0] * 5
        e[VARS.index(name)] = 1
        return cls({tuple(e): 1})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    # -- ring operations --------------------------------------------------------

    @staticmethod
    def _coerce(other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return MultiPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def scale(self, c) -> "MultiPoly":
        return MultiPoly({e: c * v for e, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        out: dict[tuple, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3], e1[4] + e2[4])
                out[e] = out.get(e, 0) + c1 * c2
        return MultiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            return NotImplemented
        result = MultiPoly.const(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    # -- inspection ------------------------------------------------------------

    def swapped(self) -> "MultiPoly":
        """Exchange ``L <-> R`` and ``l <-> r``."""
        return MultiPoly({(e[4], e[3], e[2], e[1], e[0]): c for e, c in self._terms.items()})

    def coefficient_in_d(self, j: int) -> "MultiPoly":
        """Coefficient of ``d**j`` as a polynomial in ``L, l, r, R``."""
        return MultiPoly({
            (e[0], e[1], 0, e[3], e[4]): c for e, c in self._terms.items() if e[2] == j
        })

    def degree_in_d(self) -> int:
        return max((e[2] for e in self._terms), default=-1)

    def evaluate(self, L, l, d, r, R):
        vals = (L, l, d, r, R)
        total = 0
        for e, c in self._terms.items():
            t = c
            for v, k in zip(vals, e):
                if k:
                    t = t * v ** k
            total = total + t
        return total

    def sorted_terms(self) -> list[tuple[tuple, Fraction]]:
        """Terms by descending power of ``d``, then descending ``(eL, el, er, eR)``."""
        return sorted(
            self._terms.items(),
            key=lambda t: (-t[0][2], tuple(-t[0][i] for i in (0, 1, 3, 4))),
        )

    def to_text(self) -> str:
        """Canonical text, e.g. ``d^3 - 1*L*R*d - 2*l*r*d + 1*L*r^2 + 1*R*l^2``."""
        if not self._terms:
            return "0"
        parts = []
        for idx, (e, c) in enumerate(self.sorted_terms()):
            factors = [VARS[i] if e[i] == 1 else f"{VARS[i]}^{e[i]}" for i in _PRINT_ORDER if e[i]]
            mag = abs(c)
            mag_s = str(mag.numerator) if mag.denominator == 1 else f"{mag.numerator}/{mag.denominator}"
            pure_d = e[2] > 0 and sum(e) == e[2]
            if not factors:
                body = mag_s
            elif pure_d and mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([mag_s] + factors)
            if idx == 0:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)

    def __repr__(self):
        return f"MultiPoly({self.to_text()!r})"


L, l, d, r, R = (MultiPoly.var(v) for v in VARS)


def symbolic_d_polynomial(n: int) -> MultiPoly:
    """``D(n)`` with ``L, l, d, r, R`` as indeterminates."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return d_sequence((L, l, d, r, R), n)[n]


def _reference_tables() -> dict[int, MultiPoly]:
    return {
        3: d**3 - d * (L*R + 2*l*r) + L*r**2 + R*l**2,
        4: (d**4 - d**2 * (2*L*R + 3*l*r) + d * (2*L*r**2 + 2*R*l**2)
            + L**2*R**2 - 2*L*R*l*r + l**2*r**2),
        5: (d**5 - d**3 * (3*L*R + 4*l*r) + d**2 * (3*L*r**2 + 3*R*l**2)
            + d * (2*L**2*R**2 - 2*L*R*l*r + 3*l**2*r**2)
            + (L**2*R*r**2 + R**2*L*l**2 - 2*L*l*r**3 - 2*R*r*l**3)),
        6: (d**6 - d**4 * (4*L*R + 5*l*r) + d**3 * (4*L*r**2 + 4*R*l**2)
            + d**2 * (4*L**2*R**2 + 6*l**2*r**2) + d * (-6*L*l*r**3 - 6*R*l**3*r)
            + (-4*L**2*R**2*l*r + L**2*r**4 + 6*L*R*l**2*r**2 + R**2*l**4 - l**3*r**3)),
        7: (d**7 - d**5 * (5*L*R + 6*l*r) + d**4 * (5*L*r**2 + 5*R*l**2)
            + d**3 * (7*L**2*R**2 + 4*L*R*l*r + 10*l**2*r**2)
            - d**2 * (3*L**2*R*r**2 + 3*R**2*L*l**2 + 12*L*l*r**3 + 12*R*r*l**3)
            - d * (2*L**3*R**3 + 6*L**2*R**2*l*r - 3*L**2*r**4 - 3*R**2*l**4
                   - 15*L*R*l**2*r**2 + 4*l**3*r**3)
            + (3*L**3*R**2*r**2 + 3*R**3*L**2*l**2 - 6*L**2*R*l*r**3 - 6*R**2*L*r*l**3
               + 3*L*l**2*r**4 + 3*R*r**2*l**4)),
        8: (d**8 - d**6 * (6*L*R + 7*l*r) + d**5 * (6*L*r**2 + 6*R*l**2)
            + d**4 * (11*L**2*R**2 + 10*L*R*l*r + 15*l**2*r**2)
            + d**3 * (-8*L**2*R*r**2 - 8*L*R**2*l**2 - 20*L*l*r**3 - 20*R*l**3*r)
            + d**2 * (-6*L**3*R**3 - 9*L**2*R**2*l*r + 6*L**2*r**4 + 24*L*R*l**2*r**2
                      + 6*R**2*l**4 - 10*l**3*r**3)
            + d * (6*L**3*R**2*r**2 + 6*L**2*R**3*l**2 - 12*L**2*R*l*r**3 - 12*L*R**2*l**3*r
                   + 12*L*l**2*r**4 + 12*R*l**4*r**2)
            + (R**4*L**4 - 6*L**3*R**3*l*r + 2*L**3*R*r**4 + 15*L**2*R**2*l**2*r**2
               - 3*L**2*l*r**5 + 2*L*R**3*l**4 - 12*L*R*l**3*r**3 - 3*R**2*l**5*r + l**4*r**4)),
        9: (d**9 + (-7*L*R - 8*l*r) * d**7 + (7*L*r**2 + 7*R*l**2) * d**6
            + (16*L**2*R**2 + 18*L*R*l*r + 21*l**2*r**2) * d**5
            + (-15*L**2*R*r**2 - 15*L*R**2*l**2 - 30*L*l*r**3 - 30*R*l**3*r) * d**4
            + (-13*L**3*R**3 - 16*L**2*R**2*l*r + 10*L**2*r**4 + 30*L*R*l**2*r**2
               + 10*R**2*l**4 - 20*l**3*r**3) * d**3
            + (12*L**3*R**2*r**2 + 12*L**2*R**3*l**2 - 12*L**2*R*l*r**3 - 12*L*R**2*l**3*r
               + 30*L*l**2*r**4 + 30*R*l**4*r**2) * d**2
            + (3*L**4*R**4 - 6*L**3*R**3*l*r + 3*L**3*R*r**4 + 30*L**2*R**2*l**2*r**2
               - 12*L**2*l*r**5 + 3*L*R**3*l**4 - 44*L*R*l**3*r**3 - 12*R**2*l**5*r
               + 5*l**4*r**4) * d
            + 3*L**4*R**3*r**2 + 3*L**3*R**4*l**2 - 16*L**3*R**2*l*r**3 + L**3*r**6
            - 16*L**2*R**3*l**3*r + 18*L**2*R*l**2*r**4 + 18*L*R**2*l**4*r**2
            - 4*L*l**3*r**5 + R**3*l**6 - 4*R*l**5*r**3),
    }


_REFERENCE: dict[int, MultiPoly] | None = None


def reference_pn(n: int) -> MultiPoly:
    """Hand-transcribed table entry for ``3 <= n <= 9``."""
    global _REFERENCE
    if not (isinstance(n, int) and 3 <= n <= 9):
        raise RangeError(f"tabulated polynomials exist for n = 3..9, not {n!r}")
    if _REFERENCE is None:
        _REFERENCE = _reference_tables()
    return _REFERENCE[n]


@dataclass(frozen=True)
class PolyReport:
    n: int
    equal: bool
    diff: MultiPoly


def verify_pn(n: int, reference: MultiPoly | None = None) -> PolyReport:
    """Compare the symbolic recursion with the table (or a supplied stand-in)."""
    ref = reference_pn(n) if reference is None else reference
    diff = symbolic_d_polynomial(n) - ref
    return PolyReport(n, not diff, diff)
