"""Exception hierarchy.

Every error raised on purpose by the library derives from ``RavolError`` and
belongs to one of three families, which the CLI maps to exit codes.
"""


class RavolError(Exception):
    """Base class for all library errors."""


class ParseError(RavolError):
    pass


class MalformedToken(ParseError):
    pass


class DuplicateArcUse(ParseError):
    pass


class NonContiguousLabels(ParseError):
    pass


class InvalidDiagram(RavolError):
    pass


class NonPlanarEmbedding(InvalidDiagram):
    pass


class Disconnected(InvalidDiagram):
    pass


class NotAlternating(InvalidDiagram):
    pass


class NotReduced(InvalidDiagram):
    pass


class NotPrime(InvalidDiagram):
    pass


class NotPrismatic(InvalidDiagram):
    pass


class InvalidVertex(InvalidDiagram):
    pass


class InvalidParameters(InvalidDiagram):
    pass


class NonFiniteInput(InvalidDiagram):
    pass


class ComputationError(RavolError):
    """Numerical or internal failure that should never happen on valid input."""


class ReductionBrokeInvariant(ComputationError):
    pass


class SolverDiverged(ComputationError):
    pass


class LayoutClosureFailure(ComputationError):
    pass


class RootNotBracketed(ComputationError):
    pass
