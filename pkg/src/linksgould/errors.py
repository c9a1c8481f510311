"""Exception hierarchy shared by every module of the package."""


class LinksGouldError(Exception):
    """Base class for all errors raised by linksgould."""


class ZeroPolynomial(LinksGouldError, ValueError):
    pass


class NotDivisible(LinksGouldError, ArithmeticError):
    pass


class PolynomialSyntaxError(LinksGouldError, ValueError):
    pass


class BraidSyntaxError(LinksGouldError, ValueError):
    pass


class IndexOutOfRange(LinksGouldError, ValueError):
    pass


class ConventionError(LinksGouldError):
    """An R-matrix identity failed at load time (transcription or sign mistake)."""


class DimensionMismatch(LinksGouldError, ValueError):
    pass


class ScalarViolation(LinksGouldError):
    """The partial quantum trace was not a multiple of the identity."""


class NotPolynomial(LinksGouldError, ArithmeticError):
    pass


class AsymmetricBreadth(LinksGouldError, UserWarning):
    """Odd-breadth Alexander polynomial: no symmetric integer centering exists."""


class SpanViolation(LinksGouldError):
    pass


class Unsupported(LinksGouldError):
    pass


class NotAKnot(LinksGouldError, ValueError):
    pass


class FamilySpecError(LinksGouldError, ValueError):
    pass


class TableParseError(LinksGouldError, ValueError):
    """Malformed knot table; carries the 1-based row and the offending column."""

    def __init__(self, message, row=None, column=None):
        self.row = row
        self.column = column
        where = []
        if row is not None:
            where.append(f"row {row}")
        if column is not None:
            where.append(f"column {column!r}")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(prefix + message)


class SpanParityWarning(UserWarning):
    """An LG value with odd span; recorded, never asserted away."""
