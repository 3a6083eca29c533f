"""Exception hierarchy shared by every layer of the package."""


class HodgeError(Exception):
    """Base class for all package errors."""


class InvalidInput(HodgeError, ValueError):
    """Input data violates a precondition (shape, integrality, nesting...)."""


class NoSolution(HodgeError, ArithmeticError):
    """A linear system has no solution in the requested ring."""


class UnsupportedInput(HodgeError):
    """Input is well formed but lies outside what can be computed."""


class InconsistentData(HodgeError):
    """Internal consistency check failed; signals corrupted input."""


class ParseError(HodgeError):
    """A document could not be parsed."""
