"""Exception hierarchy shared across the package."""

from __future__ import annotations


class ScdtError(ValueError):
    """Base class for all errors raised by this package."""


class ParseError(ScdtError):
    """A file or textual configuration could not be parsed."""


class InvalidReferenceError(ScdtError):
    """A reference-measure specification is not atomless / strictly increasing."""


class SingularityError(ScdtError):
    """Positive and negative parts of a signed measure share support."""


class RangeError(ScdtError):
    """Atoms fall outside the requested grid (including infinite locations)."""


class MetricDomainError(ScdtError):
    """A distance was requested outside its domain (e.g. w2 of a signed input)."""


class SingularityWarning(UserWarning):
    """Positive and negative supports come numerically close without touching."""
