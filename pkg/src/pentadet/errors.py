"""Exception types shared across the package."""


class ShapeError(ValueError):
    """Invalid (n, k) pair, diagonal length, or a route hypothesis that does not hold."""


class PivotZero(ArithmeticError):
    """A zero divisor was met during the band elimination.

    ``j`` is the index of the vanishing diagonal entry and ``s`` the
    elimination step that needed to divide by it.
    """

    def __init__(self, j: int, s: int):
        super().__init__(f"PivotZero({j},{s})")
        self.j = j
        self.s = s


class RangeError(ValueError):
    """Requested order lies outside the supported table."""


class SchemaError(ValueError):
    """Malformed JSON matrix description."""
