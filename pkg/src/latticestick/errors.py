"""Exception types shared across the package."""


class LatticeStickError(Exception):
    """Base class for all package errors."""


class UnlabeledEndpoint(LatticeStickError):
    """An edge walk terminated at an unlabeled binding point of degree != 2."""


class UnknownBindingPoint(LatticeStickError):
    """Binding-point index outside 1..beta."""


class NoValidRoot(LatticeStickError):
    """Every component of a tree is an arc component; no root can be chosen."""


class InvalidCounts(LatticeStickError):
    """A count formula received inputs outside its domain."""


class AssemblyCollision(LatticeStickError):
    """Components intersect after stacking; the radius schedule is broken."""


class NoFreeDirection(LatticeStickError):
    """More than four horizontal slots demanded at one pivot."""


class MergeCollision(LatticeStickError):
    """Every merge move for a vertex produced an intersection."""


class StraightenCollision(LatticeStickError):
    """Rerouting an arc component would intersect the rest of the embedding."""


class BoundViolated(LatticeStickError):
    """The built embedding uses more sticks than the count formula allows."""


class ReconstructionMismatch(LatticeStickError):
    """The graph read back from the embedding differs from the input graph."""

    def __init__(self, message, diff=None):
        super().__init__(message)
        self.diff = diff or []


class NotACycle(LatticeStickError):
    """The selected component is not a single closed cycle."""


class TooLarge(LatticeStickError):
    """Strand count exceeds the exhaustive-search bound."""
