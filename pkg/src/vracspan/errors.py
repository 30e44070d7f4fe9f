"""Exception types shared across the package."""


class VracspanError(Exception):
    """Base class for all domain errors raised by this package."""


class PointOutsideTriangle(VracspanError, ValueError):
    """A point lies outside the closed anchor triangle (beyond tolerance)."""


class NotEquilateral(VracspanError, ValueError):
    """An operation requires equilateral anchors but got a generic triangle."""


class VariantMismatch(VracspanError, ValueError):
    """Two coordinate triples of different variants were compared."""


class RegionOutsideTriangle(VracspanError, ValueError):
    """A deployment region is not contained in the anchor triangle."""


class UnknownNode(VracspanError, KeyError):
    """A node id is not part of the graph at hand."""


class RecursionGuardTripped(VracspanError, RuntimeError):
    """The virtual-edge relay chain exceeded its guard (cycle or depth cap).

    Only possible for the raw-distance coordinate variant, whose relay
    recursion has no proven depth bound.
    """
