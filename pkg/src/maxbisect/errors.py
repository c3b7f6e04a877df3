"""Exception hierarchy.

Two families matter to callers: :class:`PreconditionError` (the input is outside
an algorithm's domain, CLI exit code 3) and :class:`GuaranteeViolation` (an
internal bound check failed, which indicates a bug, CLI exit code 2).
"""


class MaxBisectError(Exception):
    """Base class for every error raised by this package."""


class PreconditionError(MaxBisectError):
    """Input does not satisfy an operation's precondition."""


class GraphFormatError(PreconditionError):
    pass


class NotSimple(PreconditionError):
    pass


class NotPerfect(PreconditionError):
    pass


class PreconditionViolated(PreconditionError):
    pass


class ClawInput(PreconditionError):
    """K_{1,3} is the one triangle-free subcubic graph without the stronger bound."""


class MalformedStructure(PreconditionError):
    pass


class InvalidFamily(PreconditionError):
    pass


class TooManyEdges(PreconditionError):
    pass


class ImproperColoring(PreconditionError):
    pass


class BudgetExceeded(PreconditionError):
    pass


class RejectionBudgetExceeded(MaxBisectError):
    pass


class InitializationExhausted(MaxBisectError):
    pass


class GuaranteeViolation(MaxBisectError):
    """A proven bound failed to hold on a concrete instance."""


class StructureAssertionFailed(PreconditionError):
    """A structural fact that holds for every valid input did not hold."""


class UnhandledChordPattern(PreconditionError):
    """A cycle or path carries chords no gadget table covers (e.g. a triangle)."""
