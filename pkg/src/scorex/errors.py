"""Exception hierarchy shared across scorex.

Everything derives from :class:`ScorexError`, so callers (and the CLI) can
catch one type. Validation problems are also ``ValueError`` subclasses.
"""

from __future__ import annotations


class ScorexError(Exception):
    """Base class for all scorex errors."""


class PmvError(ScorexError, ValueError):
    """A probability mass vector failed validation.

    ``index`` is the 1-based component at fault, or ``None`` when the
    problem is not attributable to a single component.
    """

    def __init__(self, message: str, index: int | None = None):
        super().__init__(message)
        self.index = index


class LengthMismatch(PmvError):
    pass


class NotStrictlyInterior(PmvError):
    pass


class SumNotOne(PmvError):
    pass


class OutcomeError(ScorexError, ValueError):
    pass


class RealmMismatch(ScorexError, ValueError):
    """Two objects that must share a realm do not."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message)
        self.line = line


class DomainViolation(ScorexError, ValueError):
    pass


class SeriesError(ScorexError, ValueError):
    """Problem located at a specific 1-based line of a forecast series."""

    def __init__(self, line: int, cause: str):
        super().__init__(f"line {line}: {cause}")
        self.line = line
        self.cause = cause


class ParseError(SeriesError):
    pass


class ValidationError(SeriesError):
    pass


class NonMonotoneStep(SeriesError):
    pass


class SinkError(ScorexError, OSError):
    pass
