"""Exception hierarchy shared by the library and the CLI."""

from __future__ import annotations


class EdgeDeckError(Exception):
    """Base class for every error raised by :mod:`edgedeck`."""


class InvalidParametersError(EdgeDeckError, ValueError):
    """Parameters outside the documented preconditions."""


class InvalidPairError(InvalidParametersError):
    """A vertex pair that is a loop or references a missing vertex."""


class TooLargeError(InvalidParametersError):
    """A dense build would exceed the configured size guard."""


class OutOfRegimeError(InvalidParametersError):
    """Direct reconstruction requested with m <= N/2."""


class Graph6ParseError(EdgeDeckError, ValueError):
    """Malformed graph6 text; ``offset`` is the byte that failed."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


class NotRealizableDeckError(EdgeDeckError):
    """A multiplicity vector that is not the image of any graph collection."""


class MalformedDeckError(NotRealizableDeckError):
    """A deck whose shape or total count is already inconsistent.

    A malformed deck cannot be realizable either, so this is a subclass of
    :class:`NotRealizableDeckError`; the CLI still reports it separately.
    """


class IdentityMismatchError(EdgeDeckError, AssertionError):
    """An exact identity or closed form failed to hold."""
