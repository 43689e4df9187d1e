"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Inputs violate a structural precondition (bad shapes, ids, formats)."""


class InfeasibleError(RuntimeError):
    """A solution or requested operation is infeasible."""
