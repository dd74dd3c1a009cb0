"""Typed error hierarchy shared by every module."""

from __future__ import annotations


class QuiverCoverError(Exception):
    """Base class for all library errors."""


class StructuralError(QuiverCoverError):
    """Malformed input data: duplicate labels, dangling endpoints, bad syntax."""


class ParseError(StructuralError):
    """Workspace text that does not parse; carries the offending line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class HypothesisError(QuiverCoverError):
    """Operation invoked outside its hypotheses (cyclic, multiple arrows, disconnected)."""


class DomainError(QuiverCoverError):
    """Well-formed operands that the operation does not accept (non-parallel paths, ...)."""


class CapacityError(QuiverCoverError):
    """A configured cap was exceeded; ``partial`` carries whatever was built so far."""

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


class NotInvertibleError(DomainError):
    """Arrow substitution that is not an automorphism."""


class NotTransvectionProductError(DomainError):
    """Arrow substitution outside the transvection group."""


class NotConjugateError(DomainError):
    """Ideals provably not related by any transvection product."""


class SeedError(DomainError):
    """Seed automorphism does not carry the monomial ideal onto the target."""


class NotComparableError(DomainError):
    """Homotopy relations without a containment, so no induced surjection."""


class ConsistencyError(QuiverCoverError):
    """Internal cross-check failed; indicates a bug, reported with full context."""
