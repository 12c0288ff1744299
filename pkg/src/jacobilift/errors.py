"""Exception types shared across the package."""


class JacobiLiftError(Exception):
    """Base class for all package errors."""


class RingMismatchError(JacobiLiftError):
    """Raised when two series over different coefficient rings are combined."""


class RingPromotionError(JacobiLiftError):
    """Raised when an operation needs a larger coefficient ring than the input's."""


class InexactDivisionError(JacobiLiftError):
    """Raised when a division that must be exact leaves a remainder."""


class PrecisionError(JacobiLiftError):
    """Raised when an operation needs more q-precision than is available."""


class ValidationError(JacobiLiftError):
    """Raised when structured input (invariants, CLI arguments) is inconsistent."""


class IdentityError(JacobiLiftError):
    """Raised when a checked algebraic identity or divisibility fails."""
