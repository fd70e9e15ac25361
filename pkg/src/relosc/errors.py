"""Exception types shared across the package."""


class RelOscError(Exception):
    """Base class for all relosc errors."""


class DomainError(RelOscError, ValueError):
    """Argument outside the open domain of validity (e.g. at or beyond the horizon)."""


class RegimeError(RelOscError, ValueError):
    """Operation undefined in the requested parameter regime (e.g. k at epsilon=0)."""


class UsageError(RelOscError, ValueError):
    """Inconsistent operands, unknown labels, or invalid configuration."""


class StepUnderflowError(RelOscError, ArithmeticError):
    """Finite-difference step too small to resolve in floating point."""
