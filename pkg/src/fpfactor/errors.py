"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of an exact operation."""


class UndefinedProductError(DomainError):
    """The extended-real product 0 * inf has no value."""


class NotRepresentableError(DomainError):
    """A real value is not a member of the floating-point format."""


class PreconditionError(ValueError):
    """A solver precondition does not hold.

    ``clause`` is a short machine-readable tag naming the failed condition,
    so callers can decide between an oracle fallback and reporting the
    query as unsupported.
    """

    def __init__(self, clause: str, message: str = ""):
        super().__init__(f"{clause}: {message}" if message else clause)
        self.clause = clause


class ResourceError(RuntimeError):
    """An enumeration would exceed its configured cardinality cap."""
