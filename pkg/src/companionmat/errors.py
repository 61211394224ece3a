"""Exception hierarchy.

Input problems (bad shapes, zero endpoints, malformed text) derive from
``ValueError``; mathematical failures (singular matrices, common factors)
derive from ``ArithmeticError``.  The CLI maps the two families onto
different exit codes.
"""


class DimensionError(ValueError):
    pass


class EndpointError(ValueError):
    """A companion construction needs a nonzero leading/trailing coefficient."""


class StructureError(ValueError):
    """A matrix is not Toeplitz/Hankel where that structure was required."""


class SingularMatrixError(ArithmeticError):
    pass


class NotCoprimeError(SingularMatrixError):
    pass


class ConsistencyError(RuntimeError):
    """Two routes to the same exact quantity disagreed (an implementation fault)."""
