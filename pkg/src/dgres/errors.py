"""Exception types shared across the package."""


class DgresError(Exception):
    """Base class for all errors raised by dgres."""


class MismatchedAlgebra(DgresError):
    """Operands belong to different algebras."""


class LengthMismatch(DgresError):
    """Tensor operands have incompatible word lengths."""


class NotInJn(DgresError):
    """Element does not lie in the requested tensor power of the diagonal ideal."""


class NotInDomain(DgresError):
    """Element is outside the domain of the requested map."""


class NotLinear(DgresError):
    """A map that must be bimodule-linear fails a linearity spot check."""


class ObstructionNonzero(DgresError):
    """A would-be derivation does not vanish where the construction requires it."""


class ShapeMismatch(DgresError):
    """Module tensor element has the wrong shape for the requested operation."""


class NotValidated(DgresError):
    """Operation requires a validated input object."""


class WindowIncomplete(DgresError):
    """Requested degree exceeds the soundly computed window."""


class UsageError(DgresError):
    """Bad command line or option combination."""


class ParseError(DgresError):
    """Problem-file syntax error, with position information."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" at line {line}" + (f", column {column}" if column is not None else "")
        super().__init__(message + where)
