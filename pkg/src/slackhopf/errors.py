"""Exception hierarchy shared by every layer of the package."""


class SlackHopfError(Exception):
    """Base class for all errors raised by slackhopf."""


class ZeroInverse(SlackHopfError, ZeroDivisionError):
    pass


class NonSquare(SlackHopfError, ValueError):
    pass


class DimensionMismatch(SlackHopfError, ValueError):
    pass


class SlotOutOfRange(SlackHopfError, IndexError):
    pass


class InvalidStructure(SlackHopfError, ValueError):
    """Structure constants failed validation at construction time."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class NotAUnit(SlackHopfError, ValueError):
    pass


class BoundExceeded(SlackHopfError):
    pass


class IdentityViolation(SlackHopfError):
    """An identity guaranteed by the theory failed on concrete data.

    Signals invalid input (a forged certificate, a wrong counit) rather
    than a recoverable condition.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class InverseMismatch(IdentityViolation):
    pass


class ModuleAxiomViolation(SlackHopfError, ValueError):
    pass


class PreconditionError(SlackHopfError, ValueError):
    pass


class ParseError(SlackHopfError, ValueError):
    def __init__(self, message, line=None, field=None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(prefix + message)
        self.line = line
        self.field = field
