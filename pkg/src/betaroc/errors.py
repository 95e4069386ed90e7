"""Exception hierarchy shared across the package."""


class BetaRocError(Exception):
    """Base class for all errors raised by betaroc."""


class DomainError(BetaRocError, ValueError):
    """An argument lies outside the mathematical domain of a function."""


class InputError(BetaRocError, ValueError):
    """Malformed or unusable input data (empty class, non-finite value)."""


class ParseError(InputError):
    """A score file could not be parsed.

    Attributes
    ----------
    line : int or None
        1-based line number of the offending record, when known.
    """

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class FitError(BetaRocError, ValueError):
    """A sample cannot be fitted (too small, all values equal)."""

    def __init__(self, message, label=None):
        self.label = label
        if label is not None:
            message = f"{label}: {message}"
        super().__init__(message)


class DegenerateSampleError(FitError):
    """Sample variance is zero."""


class OverdispersedSampleError(FitError):
    """Sample variance reaches the Bernoulli bound m(1 - m)."""
