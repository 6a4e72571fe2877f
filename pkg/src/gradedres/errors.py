"""Exception types shared across the package."""


class AlgebraError(ValueError):
    """Base class for input and consistency errors."""


class RingMismatchError(AlgebraError):
    """Operands belong to different rings."""


class HomogeneityError(AlgebraError):
    """An input that must be homogeneous is not."""


class PresentationError(AlgebraError):
    """A presentation or matrix violates its grading contract."""


class LinearGeneratorError(AlgebraError):
    """A defining ideal generator has degree < 2."""


class CertificateError(AlgebraError):
    """A certificate is malformed or refers to missing data."""


class BudgetExceededError(RuntimeError):
    """A configured resource budget was exhausted before completion."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class InternalCheckError(AssertionError):
    """Two independent computation routes disagreed; indicates a bug."""


class ScriptError(AlgebraError):
    """Problem parsing or executing a session script."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
