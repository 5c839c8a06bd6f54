"""Exception types shared across the package."""


class MetaplecticError(Exception):
    """Base class for all package errors."""


class ValidationError(MetaplecticError, ValueError):
    """Input failed a structural check (shape, symplecticity, unitarity, ...)."""


class DecompositionError(MetaplecticError):
    """A factorization could not be reassembled within tolerance."""


class QuadratureError(MetaplecticError):
    """A numerical integral did not converge to the requested accuracy."""


class ConsistencyError(MetaplecticError):
    """An internal invariant that should hold by construction was violated."""
