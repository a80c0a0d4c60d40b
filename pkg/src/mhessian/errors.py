"""Exception hierarchy shared by every module."""


class MHessianError(Exception):
    """Base class for mathematical/domain failures (CLI exit code 3)."""


class LayoutError(MHessianError):
    """Operands do not share a variable layout."""


class ContractError(MHessianError):
    """A documented precondition was violated by the caller."""


class DomainError(MHessianError):
    """Parameters lie outside the range where the operation is defined."""


class ReductionError(MHessianError):
    """Normal form computation could not be carried out."""


class ModularError(MHessianError):
    """A modular evaluation hit a denominator divisible by the prime."""


class NotGenericallyExactError(MHessianError):
    """Rank bookkeeping shows the complex cannot be generically exact."""


class DegenerateComplexError(MHessianError):
    """No admissible chain of minors was found."""


class StaleChainError(MHessianError):
    """A selected minor turned out to be identically zero."""


class IndeterminateError(MHessianError):
    """Both sections vanish on the curve; no comparison is possible."""


class SingularityError(MHessianError):
    """The requested point is a singular point of the curve."""


class PrecisionError(MHessianError):
    """Series truncation too short to certify a valuation."""


class ParseError(Exception):
    """Input text does not follow the polynomial grammar (CLI exit code 2)."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}, column {column}: " if column is not None else f"line {line}: "
        elif column is not None:
            where = f"column {column}: "
        super().__init__(where + message)
