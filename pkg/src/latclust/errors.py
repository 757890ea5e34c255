"""Exception types raised by latclust."""


class LatclustError(Exception):
    """Base class for all latclust errors."""


class ParameterError(LatclustError, ValueError):
    """A parameter is outside its documented range."""


class ValidationError(LatclustError, ValueError):
    """Input data violates a structural invariant (shape, symmetry, finiteness)."""


class ParseError(ValidationError):
    """A file could not be parsed; carries the offending 1-based line number."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class GenerationError(LatclustError, RuntimeError):
    """Synthetic data generation failed (e.g. unattainable center separation)."""


class NonConvergenceError(LatclustError, RuntimeError):
    """The transfer dynamics hit the iteration cap before terminating."""

    def __init__(self, iterations, active_count):
        super().__init__(
            f"dynamics did not terminate within {iterations} iterations "
            f"({active_count} neurons still active)"
        )
        self.iterations = iterations
        self.active_count = active_count
