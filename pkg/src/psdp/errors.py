"""Exception types raised by this package.

Everything derives from PsdpError so callers can catch the whole family.
Errors that signal a bad argument also derive from ValueError, and numeric
backend failures derive from ArithmeticError, so generic handlers keep
working.
"""


class PsdpError(Exception):
    """Base class for all errors raised by this package."""


class DimensionError(PsdpError, ValueError):
    """An input array has the wrong rank or an incompatible shape."""


class ParameterError(PsdpError, ValueError):
    """A scalar argument lies outside its admissible range."""


class NumericError(PsdpError, ArithmeticError):
    """A numerical kernel failed, e.g. an eigensolver did not converge."""


class DegenerateProblemError(PsdpError):
    """The data matrix X is (numerically) zero, so every PSD matrix is optimal."""


class NotAttainedError(PsdpError):
    """The infimum is not attained; no exact optimal assembly exists."""


class ConstraintViolationError(PsdpError, ValueError):
    """A supplied matrix violates a required semidefiniteness condition."""


class InapplicableError(PsdpError):
    """The requested closed form does not apply to this instance."""


class ConfigurationError(PsdpError, ValueError):
    """An invalid method/initialization combination or CLI configuration."""


class MatrixParseError(PsdpError, ValueError):
    """A matrix text file is malformed; the message names the offending line."""
