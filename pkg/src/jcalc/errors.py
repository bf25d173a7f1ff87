"""Exception types shared across jcalc."""


class JcalcError(Exception):
    """Base class for all jcalc errors."""


class ParseError(JcalcError, ValueError):
    """Malformed textual input.  ``pos`` is a 0-based column, ``line`` 1-based."""

    def __init__(self, message, text=None, pos=None, line=None):
        self.text = text
        self.pos = pos
        self.line = line
        self.message = message
        where = []
        if line is not None:
            where.append(f"line {line}")
        if pos is not None:
            where.append(f"column {pos + 1}")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)


class RankError(JcalcError, ValueError):
    """Generator index out of range, or operands of different rank."""


class PreconditionError(JcalcError, ValueError):
    """A mathematical precondition of an operation does not hold."""


class NotStabilized(JcalcError, RuntimeError):
    """Fixed-point iteration over a nilpotent group failed to stabilize."""
