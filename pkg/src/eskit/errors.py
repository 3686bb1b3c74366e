"""Exception hierarchy shared by the library and the CLI."""

from __future__ import annotations


class EsKitError(Exception):
    """Base class for all library errors."""


class GraphFormatError(EsKitError, ValueError):
    def __init__(self, message: str, offset: int | None = None):
        self.offset = offset
        if offset is not None:
            message = f"{message} (at byte offset {offset})"
        super().__init__(message)


class FamilySpecError(EsKitError, ValueError):
    pass


class EdgelessGraphError(EsKitError, ValueError):
    """Stability and colouring queries need at least one edge."""


class PreconditionError(EsKitError, ValueError):
    pass


class BudgetExceededError(EsKitError):
    pass
