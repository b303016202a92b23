"""Exception taxonomy shared by every module.

Every raisable condition gets its own class so callers (and the CLI exit
code logic) can branch on type instead of parsing messages. Classes that
carry structured data expose it as attributes in addition to the message.
"""

from __future__ import annotations

from typing import Any


class TopekitError(Exception):
    """Base class for all package errors."""


class ParseError(TopekitError):
    """Input file or JSON document malformed."""


class GroundCapExceeded(TopekitError):
    """Requested ground set larger than the configured bit cap."""


class NotHalfSet(TopekitError):
    """half_set_distance called on a set that is not a half set."""


class AxiomViolation(TopekitError):
    """A named preacycloid axiom failed; carries the witness."""

    def __init__(self, axiom: str, witness: Any, message: str = ""):
        self.axiom = axiom
        self.witness = witness
        super().__init__(message or f"axiom {axiom} violated: {witness}")


class NotAcycloid(TopekitError):
    pass


class TopeNotFound(TopekitError):
    pass


class CapExceeded(TopekitError):
    """Exhaustive enumeration demanded beyond the configured cap."""


class NotSimple(TopekitError):
    pass


class NotGeometry(TopekitError):
    """Operation defined only for finite simple oriented matroids."""


class BadPartition(TopekitError):
    """Minor arguments are not a disjoint involution-stable split."""


class ZeroVector(TopekitError):
    pass


class DuplicateAfterNegation(TopekitError):
    """Two input vectors coincide after adjoining negatives."""


class EmptyTopeFamily(TopekitError):
    pass


class BadLoopSplit(TopekitError):
    """The declared positive loop half does not split the loop set."""


class PrerequisiteFailed(TopekitError):
    """A required property flag of the input does not hold."""

    def __init__(self, flag: str, message: str = ""):
        self.flag = flag
        super().__init__(message or f"prerequisite not satisfied: {flag}")


class NotFaithful(TopekitError):
    """Two distinct morphisms share an inversion set."""

    def __init__(self, g: Any, h: Any):
        self.g = g
        self.h = h
        super().__init__(f"not faithful: {g} and {h} share an inversion set")


class NotAntipodal(TopekitError):
    pass


class GroupCapExceeded(TopekitError):
    pass


class NotNegationClosed(TopekitError):
    pass


class NotComposable(TopekitError):
    """Morphism endpoints do not fit the requested diagram."""


class EdgeMismatch(TopekitError):
    pass


class NotComplete(TopekitError):
    """Operation requires the complete flag on the ambient structure."""


class NotOrthogonal(TopekitError):
    def __init__(self, message: str = "inputs are not orthogonal", index: int | None = None):
        self.index = index
        super().__init__(message)


class HypothesisFailed(TopekitError):
    pass


class InconsistentRun(TopekitError):
    """Internal cross-check disagreed. Always a bug, never a result."""


class InternalConsistencyError(InconsistentRun):
    """Two implementations of the same predicate disagreed."""
