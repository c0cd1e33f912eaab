"""
Exception hierarchy for graph-inertia.

Verification violations are never raised; they are counted in reports.
"""

from typing import Optional


class GraphInertiaError(Exception):
    """Base class for all library errors."""


class GraphError(GraphInertiaError, ValueError):
    """A constructor or operation received arguments violating its pre-conditions."""


class Graph6Error(GraphError):
    """Malformed graph6 text."""

    def __init__(self, message: str, offset: Optional[int] = None):
        self.offset = offset
        if offset is not None:
            message = f"{message} (byte offset {offset})"
        super().__init__(message)


class BkSyntaxError(GraphError):
    """Malformed B_k name."""


class OracleLimitError(GraphInertiaError, ValueError):
    """An exhaustive enumeration was asked for an order beyond its cap."""


class StaleFindingError(GraphInertiaError):
    """A transformation finding no longer satisfies its neighbourhood equations."""


class InertiaLawViolation(GraphInertiaError):
    """Deleting a congruent vertex changed p or n, or did not lower the nullity by one."""
