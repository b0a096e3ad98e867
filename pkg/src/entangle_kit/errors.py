"""Exception types shared across the package."""


class CapacityError(ValueError):
    """Problem size beyond the dense, desk-scale bounds."""


class ValidationError(ValueError):
    """Numerical input fails a physical-validity check (positivity, trace, ...)."""


class InconsistentCorrelatorError(ValidationError):
    """Correlators do not assemble into a positive two-site density matrix."""


class UnsupportedModelError(ValueError):
    pass


class DiagnosticError(RuntimeError):
    """A numerical procedure could not deliver a trustworthy result."""
