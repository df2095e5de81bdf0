"""Exception types shared across the package."""

from __future__ import annotations


class KTDError(Exception):
    """Base class for all errors raised by this package."""


class DegenerateDirection(KTDError):
    """Two points are aligned along the 0, 60 or 120 degree direction."""


class InvalidPointSet(KTDError):
    """A point set failed validation (duplicates or general position)."""


class SizeLimit(KTDError):
    """An exact/exhaustive routine was asked to run beyond its size cap."""


class OddN(KTDError):
    """A perfect-matching routine received an odd number of vertices."""


class EmptyPartition(KTDError):
    """A partition with no blocks was supplied."""


class HypothesisNotMet(KTDError):
    """A configuration is outside the scope of the check it was passed to."""


class NotABlocker(KTDError):
    """The supplied point set does not block the graph."""


class RoleMismatch(KTDError):
    """Witness roles reference bad indices or have the wrong cardinality."""


class ParseError(KTDError):
    """An input file could not be parsed."""
