"""Exception hierarchy shared by every contentlab module."""

from __future__ import annotations


class ContentLabError(Exception):
    """Base class for all errors raised by contentlab."""


class InvalidModulusError(ContentLabError):
    pass


class SizeCapError(ContentLabError):
    """A construction would exceed a configured size cap."""

    def __init__(self, what: str, size: int, cap: int):
        super().__init__(f"{what} would have {size} elements, cap is {cap}")
        self.what = what
        self.size = size
        self.cap = cap


class DomainMismatchError(ContentLabError):
    """Operands live over different rings or algebras."""


class InvalidMultSetError(ContentLabError):
    pass


class InvalidMonoidError(ContentLabError):
    pass


class DegenerateDepthError(ContentLabError):
    pass


class DescriptorSyntaxError(ContentLabError):
    """Raised by the descriptor parser; carries the offending position."""

    def __init__(self, message: str, position: int, expected: str | None = None):
        text = f"{message} at position {position}"
        if expected:
            text += f" (expected {expected})"
        super().__init__(text)
        self.position = position
        self.expected = expected
