"""Exception types raised by the engine."""


class SymdiffError(Exception):
    """Base class for all engine errors."""


class DomainMismatch(SymdiffError):
    """Two scalars from different coefficient domains were combined."""


class DivisionByZero(SymdiffError):
    pass


class NonUnitDivisor(SymdiffError):
    """Division whose exact result would leave the valuation ring."""


class NotDVRDomain(SymdiffError):
    """A valuation/Frobenius/delta operation was asked of a field domain."""


class InvalidLift(SymdiffError):
    """A Frobenius-lift image fails the required congruence, or cannot act."""


class RingMismatch(SymdiffError):
    """Two polynomials from different rings were combined."""


class NoParameterT(SymdiffError):
    """A t-derivative was requested in a domain without the parameter t."""


class InexactDivision(SymdiffError):
    """Coefficient-wise division by p failed; indicates an internal bug."""


class NonProperIdeal(SymdiffError):
    """The ideal contains 1; power membership is meaningless."""


class UnsupportedDomain(SymdiffError):
    """The operation is only available over field coefficient domains."""


class UndeclaredVariable(SymdiffError):
    """An expression used a variable not declared in the ring."""


class ParseError(SymdiffError):
    """Syntax error in an expression, operator, or job file."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" at line {line}" + (f", column {column}" if column is not None else "")
        super().__init__(message + where)
