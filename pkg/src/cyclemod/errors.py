"""Exception types shared across the library.

Every error raised deliberately by cyclemod derives from CycleModError, so
callers can catch the library's failures without masking genuine bugs.
"""

from __future__ import annotations


class CycleModError(Exception):
    """Base class for all cyclemod errors."""


class InvalidInput(CycleModError):
    """An argument violates a documented precondition."""


class InvalidEdge(CycleModError):
    """An edge is a loop or has an endpoint outside 0..n-1."""


class EmptyGraph(CycleModError):
    """The operation needs at least one vertex."""


class InvalidVertex(CycleModError):
    """A vertex index is outside the graph."""


class InvalidChord(CycleModError):
    """Chord positions are equal or adjacent on the cycle."""


class NotPrime(CycleModError):
    """Projective plane order must be prime."""


class TooLarge(CycleModError):
    """The instance exceeds the guard for an exhaustive search."""


class WrongParity(CycleModError):
    """The closed form only applies to odd forbidden cycle lengths."""


class ParseError(CycleModError):
    """An edge-list file is malformed; the message names the line."""


class NoDenseLayer(CycleModError):
    """No consecutive level pair reaches the requested density.

    ``densities`` holds one ``(i, cross_edges, vertices)`` triple per level
    pair so the caller can see how far short every candidate fell.
    """

    def __init__(self, message: str, densities: list[tuple[int, int, int]]):
        super().__init__(message)
        self.densities = densities


class EmptyCore(CycleModError):
    """Degree peeling deleted every vertex (legal: the input was too sparse)."""


class NotLocked(CycleModError):
    """The designated vertex does not have all its neighbors on the cycle."""


class Stalled(CycleModError):
    """Rotation-extension ran out of moves before reaching the target.

    ``best_cycle`` is the longest cycle encountered (or None) and
    ``endpoints`` the set of path endpoints reachable by rotations when the
    search gave up.
    """

    def __init__(
        self,
        message: str,
        best_cycle: tuple[int, ...] | None,
        endpoints: frozenset[int],
    ):
        super().__init__(message)
        self.best_cycle = best_cycle
        self.endpoints = endpoints


class BipartiteException(CycleModError):
    """The requested endpoint classes are exactly the theta's bipartition."""


class DegenerateU(CycleModError):
    """Fewer than two anchor vertices; no branching ancestor exists."""


class InternalInvariantViolation(CycleModError):
    """A structural fact the construction relies on failed to hold."""


class StageFailure(CycleModError):
    """A pipeline stage could not produce its output.

    ``stage`` names the failing stage, ``diagnostics`` carries the trace
    collected so far plus stage-specific details.
    """

    def __init__(self, stage: str, reason: str, diagnostics: dict | None = None):
        super().__init__(f"stage {stage!r} failed: {reason}")
        self.stage = stage
        self.reason = reason
        self.diagnostics = diagnostics or {}


class PreconditionViolation(CycleModError):
    """A guarantee-mode input fails the theorem's hypotheses.

    ``deficit`` is the exact rational shortfall when the violated
    hypothesis is the average-degree bound, else None.
    """

    def __init__(self, reason: str, deficit=None):
        super().__init__(reason)
        self.reason = reason
        self.deficit = deficit
