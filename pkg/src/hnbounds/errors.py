"""Exception types shared by every module.

Each error carries a short machine-readable ``code`` which the CLI copies
into its JSON error object, plus an optional ``location`` naming the
offending input.
"""

from __future__ import annotations


class HNBoundsError(Exception):
    code = "error"

    def __init__(self, message: str, location: str | None = None):
        super().__init__(message)
        self.message = message
        self.location = location

    def to_dict(self) -> dict:
        return {"code": self.code, "message": self.message, "location": self.location}


class ValidationError(HNBoundsError, ValueError):
    """Malformed input: bad Cartan datum, wrong dimension, bad slopes, ..."""

    code = "validation"


class DomainError(HNBoundsError, ValueError):
    """Input well formed but outside the operation's domain (e.g. not a root)."""

    code = "domain"


class HypothesisError(HNBoundsError, ValueError):
    """A theorem's hypothesis is violated, so its bound does not apply."""

    code = "hypothesis"


class PreconditionError(HNBoundsError, ValueError):
    code = "precondition"


class AmbiguityError(HNBoundsError):
    """Several incomparable facets tie for the maximal degree."""

    code = "ambiguity"

    def __init__(self, message: str, candidates=(), location: str | None = None):
        super().__init__(message, location)
        self.candidates = list(candidates)


class ResourceError(HNBoundsError):
    """An enumeration would exceed its configured cap."""

    code = "resource"

    def __init__(self, message: str, partial_size: int | None = None, location: str | None = None):
        super().__init__(message, location)
        self.partial_size = partial_size


class ConsistencyError(HNBoundsError, AssertionError):
    """Two independent computations disagree. Always a bug."""

    code = "internal"
