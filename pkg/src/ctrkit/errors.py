"""Exception hierarchy shared across the toolkit.

DomainError maps to CLI exit code 1 and HTTP 4xx responses; anything else
propagates as an internal failure.
"""


class CtrkitError(Exception):
    """Base class for all toolkit errors."""


class DomainError(CtrkitError):
    """A request that is well-formed but cannot be satisfied (empty corpus,
    insufficient sample, empty time range)."""


class ParseError(CtrkitError):
    """A record line that is not valid JSON or not an object."""

    def __init__(self, reason: str, line_no: int | None = None):
        self.reason = reason
        self.line_no = line_no
        where = f" (line {line_no})" if line_no is not None else ""
        super().__init__(f"parse error{where}: {reason}")


class ValidationError(CtrkitError):
    """A structurally valid record that violates a model invariant."""


class NotFoundError(DomainError):
    """A referenced entity (seed hashtag, watchlist entry, pair id) does not exist."""
