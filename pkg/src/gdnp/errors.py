"""Exception types shared across the kernel and the CLI."""


class GdnpError(Exception):
    """Base class for mathematical errors raised by the kernel."""


class InvalidWord(GdnpError):
    """A factor list / star count pair is not a valid canonical basis word."""


class ZeroPolynomial(GdnpError):
    """Leading word requested of the zero polynomial."""


class BadWeight(GdnpError):
    """A weight-0 basis word was required."""


class NotWeightZero(GdnpError):
    """A relation outside the weight-0 subalgebra was supplied."""


class NoCirc(GdnpError):
    """Tried to split a term that contains no circ operation."""


class BadPosition(GdnpError):
    """A slot address does not exist or is not exchangeable."""


class EmptyMonomial(GdnpError):
    """An expansion step needs a non-unit monomial."""


class BadShape(GdnpError):
    """A term does not have the row shape required by the operation."""


class ParseError(GdnpError):
    """Syntax error in an input expression.

    Carries a 1-based ``position`` and the set of token kinds that would
    have been accepted there.
    """

    def __init__(self, message: str, position: int, expected: frozenset[str]):
        super().__init__(message)
        self.position = position
        self.expected = expected
