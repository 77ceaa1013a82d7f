"""Exception hierarchy.

Errors fall in three families that the CLI maps to exit codes:

* malformed input (``InvalidGraphError``, ``DecompositionFormatError``) -> 1
* input-contract violations (``ContractViolation`` subclasses) -> 2
* failed verification (``VerificationError``) -> 3
"""


class GraphError(Exception):
    """Base class for every error raised by this package."""


class InvalidGraphError(GraphError, ValueError):
    """The graph data itself is malformed (self-loop, bad weight, bad id...)."""


class DecompositionFormatError(GraphError, ValueError):
    """A serialized decomposition does not fit its graph or its factors."""


class ContractViolation(GraphError):
    """A well-formed input violates an operation's precondition."""


class DisconnectedGraphError(ContractViolation):
    pass


class NonMinimalGraphError(ContractViolation):
    """Some edge is strictly longer than the distance between its endpoints."""

    def __init__(self, message, edges=()):
        super().__init__(message)
        self.edges = tuple(edges)


class WeightMismatchError(ContractViolation):
    """Two edges joining the same pair of components carry different weights.

    This is the reject branch of the quotient construction. For the relations
    used by this package it is unreachable on valid inputs, so hitting it
    points at a contract violation upstream.
    """

    def __init__(self, class_id, components, weights):
        a, b = components
        super().__init__(
            f"class {class_id}: edges between components {a} and {b} "
            f"have weights {weights[0]} and {weights[1]}"
        )
        self.class_id = class_id
        self.components = (a, b)
        self.weights = tuple(weights)


class NotSpanningTreeError(ContractViolation, ValueError):
    pass


class SharedEndpointError(ContractViolation, ValueError):
    """The square property needs two edges with exactly one common endpoint."""


class MalformedProductEdgeError(GraphError, ValueError):
    pass


class DistanceOverflowError(GraphError, OverflowError):
    pass


class InvariantError(GraphError, AssertionError):
    """An internal invariant was broken; always a bug."""


class BudgetExceededError(ContractViolation):
    """A desk-scale search ran past its step budget."""


class GraphTooLargeError(ContractViolation, ValueError):
    pass


class InvalidEmbeddingError(GraphError, ValueError):
    pass


class VerificationError(GraphError):
    pass
