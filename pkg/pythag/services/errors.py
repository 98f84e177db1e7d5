"""
Exception hierarchy for the Pythagorean toolkit.

Every error is a ValueError so callers that only care about "bad input"
can catch one type; commands map PythagError to exit code 1.
"""

from typing import Optional

from pydantic import ValidationError


class PythagError(ValueError):
    """Base class for domain and data failures"""


class DomainError(PythagError):
    """An argument lies outside the domain of the operation"""


class UnitError(PythagError):
    """Per-game and per-season quantities were mixed"""


class IngestError(PythagError):
    """Standings input could not be turned into records"""


class ParseError(IngestError):
    """A data row could not be read"""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class SchemaError(IngestError):
    """The header does not match the standings schema"""


class InvalidRecordError(IngestError):
    """A record parsed but violates a standings invariant"""


class SeasonNotFoundError(PythagError):
    """No records exist for the requested season"""


class InsufficientDataError(PythagError):
    """Too few observations for the requested computation"""


class DegenerateDesignError(PythagError):
    """The regressor has no variance"""


class GridTooLargeError(PythagError):
    """An evaluation grid exceeds the configured point ceiling"""


def describe(error: ValidationError) -> str:
    """One-line summary of a pydantic ValidationError: `field: message; ...`"""
    return "; ".join(
        f"{'.'.join(str(p) for p in item['loc']) or 'value'}: {item['msg']}"
        for item in error.errors()
    )
