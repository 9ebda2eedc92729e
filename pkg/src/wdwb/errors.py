"""Exception hierarchy shared by every module of the workbench."""


class WorkbenchError(Exception):
    """Base class for all workbench errors."""


class NotInvertible(WorkbenchError, ZeroDivisionError):
    pass


class NotRepresentable(NotInvertible):
    """A field-of-fractions value that has no exact Scalar form (a genuine denominator)."""


class OrderMismatch(WorkbenchError, ValueError):
    """A root of unity or exponent falls outside the session field."""


class ParseError(WorkbenchError, ValueError):
    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class ShapeError(WorkbenchError, ValueError):
    pass


class NotMonomialSplit(WorkbenchError):
    """The characteristic polynomial does not split into monomial linear factors."""


class NotSemisimple(WorkbenchError):
    pass


class NotInGroup(WorkbenchError, ValueError):
    pass


class HasUnitEigenvalue(WorkbenchError):
    """An orthogonal element has eigenvalue +1 or -1 where none is allowed."""


class UnsupportedRep(WorkbenchError, ValueError):
    pass


class FrobeniusMismatch(WorkbenchError, ValueError):
    pass


class CriteriaMismatch(WorkbenchError):
    """The L-factor and orbit criteria for genericity disagree."""


class OutOfRange(WorkbenchError, ValueError):
    pass


class InvalidParameter(WorkbenchError, ValueError):
    pass
