"""Exception hierarchy shared by the whole package.

The CLI maps these onto exit codes: ``RejectedInput``/``TruncationError``/
``ParseError`` -> 2, ``ResourceError`` -> 3, ``NotKanError`` -> 1.
"""

from __future__ import annotations


class SSetError(Exception):
    """Base class for every error raised by ssetkit."""


class RejectedInput(SSetError, ValueError):
    """Malformed or out-of-range input (bad index, dimension mismatch, unknown name)."""


class TruncationError(SSetError):
    """A question was asked above the truncation of a presentation."""


class ResourceError(SSetError):
    """A combinatorial search exceeded its configured cap."""

    def __init__(self, message: str, progress: dict | None = None):
        super().__init__(message)
        self.progress = dict(progress or {})


class NotKanError(SSetError):
    """A horn needed by a construction has no filler."""

    def __init__(self, message: str, horn=None):
        super().__init__(message)
        self.horn = horn


class ParseError(SSetError):
    """Syntax or reference error in a text document, with a 1-based location."""

    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column
        self.reason = message
