"""Exception types shared across the package."""


class DimfactorError(Exception):
    """Base class for all package-specific errors."""


class InvalidWeightError(DimfactorError, ValueError):
    """The weight is odd, below 2, or above the configured cap."""


class DomainError(DimfactorError, ValueError):
    """Input outside the mathematical domain of the requested quantity."""


class InternalInconsistencyError(DimfactorError, ArithmeticError):
    """An identity that must hold for correct inputs failed; signals a bug
    or an impossible (lying-oracle) input combination."""


class InconsistentInputsError(DimfactorError, ValueError):
    """Supplied invariant values cannot all be true for any integer."""


class FactoringFailureError(DimfactorError, RuntimeError):
    """A probabilistic reduction exhausted its retry budget or its inputs
    were provably wrong (e.g. the exponent passed as a totient multiple
    is not one)."""
