"""Exception hierarchy shared by every module of the engine."""


class SpaError(Exception):
    """Base class for all engine errors."""


class ModeMismatch(SpaError):
    """Operands live in different coefficient fields."""


class DivisionByZero(SpaError, ZeroDivisionError):
    pass


class IllegalQ(SpaError, ValueError):
    """The requested value of q violates q != 0 and q^8 != 1."""


class PoleAtQ(SpaError, ValueError):
    """A denominator vanishes at the requested value of q."""


class ZeroElement(SpaError, ValueError):
    """Leading data was requested for the zero element."""


class UnorderedPair(SpaError, ValueError):
    pass


class BudgetExceeded(SpaError):
    """A step budget ran out.

    ``partial`` carries whatever partial result the interrupted routine had
    built so far (a basis, a list of elements, ...), or None.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class NontermLimit(BudgetExceeded):
    """Rewriting did not reach standard form within the step budget."""


class ParseError(SpaError, ValueError):
    def __init__(self, message, text="", position=None):
        self.text = text
        self.position = position
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)


class UnknownGenerator(ParseError):
    pass
