"""Exception types shared across the package."""


class CitationDataError(ValueError):
    """Malformed or invalid citation data.

    Raised for bad CSV shapes, negative or non-numeric counts, duplicate or
    mismatched journal labels, and size-limit violations.
    """


class NumericalError(ArithmeticError):
    """A computation became degenerate or failed numerically.

    Raised for zero divisors (journals without references, vanished
    weakness weights), iterates that overflow or lose all mass, and
    undefined regression fits.
    """
