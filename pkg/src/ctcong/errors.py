"""Exception types shared across the package."""


class CtcongError(Exception):
    """Base class for all package-specific errors."""


class DimensionMismatch(CtcongError):
    """Two polynomials with different numbers of variables were combined."""


class ParseError(CtcongError):
    """Syntax or semantic error in a polynomial expression.

    Carries the 0-based position in the input where the problem was found.
    """

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class HypothesisViolation(CtcongError):
    """Inputs do not satisfy the hypotheses of the requested congruence."""


class StateExplosion(CtcongError):
    """Scheme synthesis exceeded the configured state or support bound."""


class MemoryCapExceeded(CtcongError):
    """An exact polynomial power grew past the configured term cap."""
