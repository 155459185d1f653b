"""Exception hierarchy shared across the package."""


class KFockError(Exception):
    """Base class for all library errors."""


class CompositionError(KFockError):
    """Attempt to compose paths with mismatched endpoints."""


class MalformedGraphError(KFockError):
    """A rewrite needed a commutation square that is missing or broken."""


class ConstructionError(KFockError):
    """A builder was given inconsistent data."""


class BudgetError(KFockError):
    """An enumeration exceeded its grading or size budget."""


class DomainError(KFockError):
    """An object was used with a graph or space it does not belong to."""


class UnsupportedGraphError(KFockError):
    """The graph lacks a structural property the operation requires."""


class SpecSyntaxError(KFockError):
    """Parse failure in the text format, with position information."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", col {column}" if column is not None else "") + ")"
        super().__init__(message + where)
