"""Exception types shared across the package."""


class EntboundError(Exception):
    """Base class for all package-specific errors."""


class ShapeMismatchError(EntboundError, ValueError):
    """Operands live on incompatible Hilbert-space dimensions."""


class InvariantViolationError(EntboundError, ValueError):
    """A numerical invariant (finiteness, hermiticity, positivity) failed beyond tolerance."""


class DegenerateStateError(EntboundError, ValueError):
    """An operation that needs a nonzero state received a numerically zero one."""


class DomainError(EntboundError, ValueError):
    """An argument is outside the supported range."""


class PreconditionError(EntboundError, ValueError):
    """A documented precondition on the inputs does not hold."""


class SchemaError(EntboundError, ValueError):
    """A JSON document does not match the expected schema."""
