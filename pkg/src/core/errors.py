"""Exception types shared across the workbench.

Precondition failures are ValueError subclasses so callers that only know
the builtin hierarchy still catch them; internal consistency failures are
RuntimeError subclasses and indicate a bug rather than bad input.
"""

from __future__ import annotations


class WorkbenchError(Exception):
    """Base class for every error raised by the workbench."""


class FieldMismatchError(WorkbenchError, ValueError):
    """Two operands live over different base fields."""


class FormParseError(WorkbenchError, ValueError):
    """A binary-form string could not be parsed."""

    def __init__(self, message: str, column: int | None = None) -> None:
        self.column = column
        self.reason = message
        if column is not None:
            message = f"{message} (column {column})"
        super().__init__(message)


class DependentSectionsError(WorkbenchError, ValueError):
    """A list of sections (or subspace basis) is linearly dependent."""


class NotGeneratedError(WorkbenchError, ValueError):
    """An operation that needs a generated coherent system received one that is not."""


class ResourceGuardError(WorkbenchError, RuntimeError):
    """An exhaustive computation was refused because it exceeds the configured guard."""


class CertificationError(WorkbenchError, RuntimeError):
    """Two independent computations of the same invariant disagree."""


class ScenarioError(WorkbenchError, ValueError):
    """A scenario file failed to parse or validate."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None) -> None:
        self.line = line
        self.column = column
        where = []
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column}")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)


class NotSaturatedError(WorkbenchError, ValueError):
    """An inclusion of bundles whose image is not a subbundle."""

    def __init__(self, message: str, defect: int | None = None) -> None:
        self.defect = defect
        if defect is not None:
            message = f"{message} (saturation defect {defect})"
        super().__init__(message)
