"""Exception types shared across the package."""


class QweylError(Exception):
    """Base class for all domain errors raised by this package."""


class NonInvertible(QweylError):
    """A zero divisor was hit while inverting; the supplied minimal
    polynomial is reducible."""


class IndexOutOfRange(QweylError, IndexError):
    """A generator index lies outside 1..n."""


class PresentationMismatch(QweylError, ValueError):
    """Operands belong to different presentations or scalar fields."""


class DimensionMismatch(QweylError, ValueError):
    """Presentations of different dimension were compared."""


class NotProportional(QweylError):
    """An automorphism image of the discriminant failed to be a unit
    multiple of the discriminant."""


class ZeroDeterminant(QweylError):
    """The trace-pairing determinant vanished; this signals an
    arithmetic bug, not a legitimate result."""


class InvalidAutomorphism(QweylError, ValueError):
    """A map that does not preserve the defining relations was applied."""


class LeadingMismatch(QweylError):
    """The closed-form leading coefficient of a word expansion did not
    dominate the remainder (a bug, or degenerate triangular parts)."""


class NotInTs(QweylError, ValueError):
    """An exponent vector failed the twist-compatibility test."""


class DegenerateExponents(QweylError, ValueError):
    """Both exponent vectors were trivial beyond their anchor entry."""


class NoStructure(QweylError, ValueError):
    """Root-of-unity structure is required but was not supplied."""


class InfiniteGroup(QweylError):
    """A certificate was requested for an infinite group whose
    homological determinant is not identically trivial."""


class UnboundName(QweylError, KeyError):
    """A formal expression referenced a name with no binding."""


class ParseError(QweylError, ValueError):
    """Input text failed to parse.  Carries 1-based line/column."""

    def __init__(self, message, line=None, col=None):
        self.message = message
        self.line = line
        self.col = col
        where = ""
        if line is not None:
            where = f" at line {line}" + (f", col {col}" if col is not None else "")
        super().__init__(message + where)


class RangeError(ParseError):
    """An index in an input file lies outside the valid range."""


class DuplicateEntry(ParseError):
    """The same matrix entry was given twice in an input file."""
