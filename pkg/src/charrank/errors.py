"""Exception hierarchy shared by every module of the package."""


class CharrankError(Exception):
    """Base class for all errors raised by :mod:`charrank`."""


class DimensionError(CharrankError, ValueError):
    """Bit vectors of different widths were combined."""


class CapacityError(CharrankError):
    """A width, basis or enumeration universe exceeds the configured limit."""


class AlgebraError(CharrankError):
    """Elements or maps from different algebras were combined, or validation failed."""

    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = list(violations)


class ParseError(CharrankError):
    """Syntax or resolution error in presentation source text."""

    def __init__(self, message, line=None, col=None):
        self.message = message
        self.line = line
        self.col = col
        where = f"line {line}, col {col}: " if line is not None else ""
        super().__init__(where + message)


class HypothesisError(CharrankError):
    """A precondition of a bound or a hypothesis-checked operation does not hold."""

    def __init__(self, message, precondition):
        super().__init__(message)
        self.precondition = precondition


class ParameterError(CharrankError, ValueError):
    """Catalog family parameters are out of range."""
