class HypersymError(Exception):
    pass


class DomainError(HypersymError, ValueError):
    """Argument outside the domain of a function (non-finite, pole of Gamma)."""


class ConstraintError(HypersymError, ValueError):
    """A balancing condition or structural invariant does not hold."""


class PoleError(HypersymError, ZeroDivisionError):
    """A denominator factor vanishes (or is below the configured floor)."""

    def __init__(self, message, factor=None):
        super().__init__(message)
        self.factor = factor


class GrowthError(HypersymError, RuntimeError):
    """Group closure exceeded its element cap."""


class RangeError(HypersymError, ArithmeticError):
    """A floating-point evaluation left the finite double range."""


class IllConditioned(HypersymError, ArithmeticError):
    """An evaluation's own error budget is too large to certify a tolerance."""
