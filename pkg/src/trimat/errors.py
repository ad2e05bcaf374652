"""Exception types shared across trimat."""


class TrimatError(Exception):
    pass


class SingularMatrix(TrimatError, ZeroDivisionError):
    """Raised when an inverse (or negative power) of a singular matrix is requested."""


class ZeroDenominator(TrimatError, ZeroDivisionError):
    pass


class UnknownSequence(TrimatError, KeyError):
    def __init__(self, name):
        super().__init__(name)
        self.name = name

    def __str__(self):
        return f"unknown sequence {self.name!r}"


class ParseError(TrimatError, ValueError):
    """Malformed identity text.

    ``position`` is the 0-based character offset where parsing stopped and
    ``expected`` describes what the parser wanted there.
    """

    def __init__(self, text, position, expected):
        self.text = text
        self.position = position
        self.expected = expected
        found = text[position:position + 1] or "end of input"
        super().__init__(f"at position {position} ({found!r}): expected {expected}")


class RoundingError(TrimatError, ArithmeticError):
    """Analytic value is too far from an integer to be trusted."""
