"""Error types shared by every module."""

from __future__ import annotations


class HeightForgeError(ValueError):
    """A failed precondition or search, tagged with a stable machine-readable code.

    The code strings (``ZERO_VECTOR``, ``SEARCH_EXHAUSTED``, ...) are part of the
    CLI's JSON error object, so they must not change.
    """

    def __init__(self, code: str, message: str = ""):
        self.code = code
        self.message = message or code
        super().__init__(f"{code}: {self.message}")


class ProblemSyntaxError(ValueError):
    """Positioned error raised while reading problem files or polynomial text."""

    def __init__(self, message: str, line: int = 1, column: int = 1):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")
