"""Positioned parse errors shared by every reader."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class ParseDiagnostic:
    line: int
    column: int
    message: str
    expected: str = ""

    def __str__(self):
        tail = f" (expected {self.expected})" if self.expected else ""
        return f"{self.line}:{self.column}: {self.message}{tail}"


class ParseError(ValueError):
    def __init__(self, diagnostic: ParseDiagnostic, source: str = "<input>"):
        super().__init__(f"{source}:{diagnostic}")
        self.diagnostic = diagnostic
        self.source = source


def position(text: str, offset: int) -> tuple[int, int]:
    """1-based (line, column) of a character offset."""
    line = text.count("\n", 0, offset) + 1
    start = text.rfind("\n", 0, offset) + 1
    return line, offset - start + 1
