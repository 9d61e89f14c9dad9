"""Exception types shared across the package."""


class InvalidParameterError(ValueError):
    """An operation was called with out-of-range or inconsistent parameters."""


class InvalidEdgeError(ValueError):
    """A vertex pair does not denote an edge of the graph (self-loop or out of range)."""


class DomainError(ValueError):
    """A numeric argument lies outside the mathematical domain of the operation."""


class InfeasibleFlowError(RuntimeError):
    """A flow result without the requested value was used where feasibility is required."""
