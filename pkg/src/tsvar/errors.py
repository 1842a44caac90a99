"""Exception hierarchy shared across the package."""


class TsvarError(Exception):
    """Base class for all package errors."""


class DomainError(TsvarError):
    """A query point or index is outside its legal domain."""


class DegenerateScaleError(TsvarError):
    """The time scale or grid has too few points for the operation."""


class DimensionMismatchError(TsvarError):
    """Vector dimensions of a function and a problem disagree."""


class GridMismatchError(TsvarError):
    """A solution's grid does not match the problem's grid."""


class ExprSyntaxError(TsvarError):
    """Expression text failed to parse.

    ``offset`` is the byte offset of the offending token in the source text.
    """

    def __init__(self, message, offset):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class EvalError(TsvarError):
    """Expression evaluation hit an undefined real value (log/sqrt of a
    negative number, division by zero, fractional power of a negative base).

    ``t`` is the grid time at which evaluation failed, when known.
    """

    def __init__(self, message, t=None):
        if t is not None:
            message = f"{message} (at t={t})"
        super().__init__(message)
        self.t = t


class FileFormatError(TsvarError):
    """A problem or solution file is malformed.

    ``section`` and ``line`` locate the offending input when known.
    """

    def __init__(self, message, section=None, line=None):
        where = []
        if section is not None:
            where.append(f"section [{section}]")
        if line is not None:
            where.append(f"line {line}")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)
        self.section = section
        self.line = line


class LatticeError(TsvarError):
    """The brute-force lattice search refused to run or found no feasible point."""
