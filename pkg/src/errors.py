"""
Harmonia Errors
Exception hierarchy shared by the engine modules and the CLI.
"""
from typing import Optional


class HarmoniaError(Exception):
    """Base class for every error raised by Harmonia."""


class FormError(HarmoniaError, ValueError):
    """An input form (or polynomial) was rejected."""


class ParseError(FormError):
    """The polynomial text does not conform to the grammar."""

    def __init__(self, message: str, text: str = "", position: Optional[int] = None):
        self.text = text
        self.position = position
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)


class FamilyMismatchError(FormError):
    """Forms from different variable families were combined."""


class DegreeMismatchError(FormError):
    """Forms (or monomials) of different degrees were combined."""


class InvariantViolation(HarmoniaError):
    """An identity that must hold exactly did not."""


class DeadlineExceeded(HarmoniaError):
    """A long-running computation ran past its deadline."""


class UnknownQuartic(HarmoniaError, KeyError):
    """No named quartic is registered under this name."""
