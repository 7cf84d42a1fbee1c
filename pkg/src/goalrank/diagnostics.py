"""Diagnostic records shared by the validator, binder, and parsers."""

from __future__ import annotations

from dataclasses import dataclass

ERROR = "error"
WARNING = "warning"


@dataclass(frozen=True)
class SourceSpan:
    """1-based location of a token or statement in an input file."""

    file: str = "<input>"
    line: int = 1
    column: int = 1

    def __str__(self) -> str:
        return f"{self.file}:{self.line}:{self.column}"


@dataclass(frozen=True)
class Diagnostic:
    rule: str
    message: str
    severity: str = ERROR
    span: SourceSpan | None = None
    node: str | None = None

    def __str__(self) -> str:
        loc = f"{self.span}: " if self.span is not None else ""
        return f"{loc}{self.severity}[{self.rule}]: {self.message}"


def errors(diags: list[Diagnostic]) -> list[Diagnostic]:
    return [d for d in diags if d.severity == ERROR]


def warnings(diags: list[Diagnostic]) -> list[Diagnostic]:
    return [d for d in diags if d.severity == WARNING]


class DiagnosticError(Exception):
    """Raised by convenience wrappers when an operation reports errors."""

    def __init__(self, diags: list[Diagnostic]):
        self.diagnostics = diags
        super().__init__("; ".join(str(d) for d in errors(diags)) or "invalid input")
