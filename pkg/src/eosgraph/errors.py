"""Exception types shared across the toolkit.

Every error carries a short machine-readable ``code`` so the CLI can emit
structured errors without string matching.
"""

from __future__ import annotations


class EosGraphError(Exception):
    """Base class for all toolkit errors."""

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code
        self.message = message

    def __str__(self) -> str:
        return f"{self.code}: {self.message}"


class ParseError(EosGraphError):
    """A raw trace line could not be turned into a valid action record.

    Codes: ``malformed-json``, ``schema-violation``, ``invalid-account-name``.
    """

    def __init__(self, code: str, message: str, line_no: int | None = None):
        super().__init__(code, message)
        self.line_no = line_no

    def __str__(self) -> str:
        if self.line_no is not None:
            return f"{self.code} (line {self.line_no}): {self.message}"
        return super().__str__()


class ClassifyError(EosGraphError):
    """A validated record matched an activity but its payload is unusable.

    Codes: ``unparseable-quantity``, ``missing-payload-field``.
    """


class GraphBuildError(EosGraphError):
    """An event stream violates the structural rules of its activity graph.

    Codes: ``mixed-activity-stream``, ``duplicate-creation``, ``self-creation``,
    ``cycle-detected``, ``multiple-roots``, ``not-a-tree``.
    """


class InsufficientPointsError(EosGraphError):
    """A degree histogram has fewer than two usable points for a fit."""

    def __init__(self, message: str):
        super().__init__("insufficient-points", message)
