"""Exception types shared by all conesemi modules."""


class ConesemiError(Exception):
    """Base class for all errors raised by this package."""


class MalformedProblem(ConesemiError):
    """Input data is dimensionally inconsistent or contains non-finite entries."""


class DimensionMismatch(MalformedProblem):
    """Two objects that must share a dimension do not."""


class DimensionTooLarge(ConesemiError):
    """A brute-force enumeration guard was exceeded."""


class NumericalFailure(ConesemiError):
    """An iterative routine degenerated beyond its iteration cap or tolerance."""


class SingularMatrix(ConesemiError):
    """A linear system has a pivot below the relative threshold."""


class NormTooLarge(ConesemiError):
    """Matrix exponential argument exceeds the accuracy guard."""


class NotPointed(ConesemiError):
    """Generators contain a full line, so they do not span a cone."""


class NotGenerating(ConesemiError):
    """The cone does not span the ambient space, so majorants may not exist."""


class NotLattice(ConesemiError):
    """Positive parts were requested for a cone that is not simplicial."""


class NotOrderUnit(ConesemiError):
    """The proposed unit is not an interior point of the cone."""


class NotPositiveFunctional(ConesemiError):
    """A functional failed dual-cone positivity certification."""


class EmptyPhi(ConesemiError):
    """A totality check was asked for an empty functional family."""


class VariantPreconditionFailed(ConesemiError):
    """A half-norm variant was built over a cone that violates its precondition."""


class VariantUnsupported(ConesemiError):
    """The requested operation is not implemented for this half-norm variant."""


class EmptySubdifferential(ConesemiError):
    """A subdifferential description turned out to be infeasible (defensive flag)."""


class Unbounded(ConesemiError):
    """An optimization that should be bounded reported an unbounded status."""


class OutsideDomain(ConesemiError):
    """A pointwise check was requested at a point outside the operator domain."""


class NotRepresentable(ConesemiError):
    """A functional could not be written as a nonnegative combination of states."""


class ProblemFileError(ConesemiError):
    """A problem file failed to parse; the message carries the field path."""
