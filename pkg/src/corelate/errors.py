"""Exception types shared across the library."""


class CorelateError(Exception):
    """Base class for all errors raised by this package."""


class TypeMismatch(CorelateError):
    """Arities or endpoints of morphisms do not line up."""


class RingMismatch(CorelateError):
    """Operands live over different coefficient rings."""


class ZeroInverse(CorelateError):
    """Inversion of zero requested."""


class NotAUnit(CorelateError):
    """Inversion of a non-unit ring element requested."""


class ZeroDenominator(CorelateError):
    """Rational with denominator zero requested."""


class NotInA(CorelateError):
    """A morphism fails the ambient's distinguished-subcategory test."""


class NotAbelian(CorelateError):
    """Operation requires a matrix ambient over a field."""


class UnknownTheory(CorelateError):
    """No semantic theory registered under the given name."""


class UnknownGenerator(CorelateError):
    """Diagram term uses a generator the theory does not bind."""


class TermSyntaxError(CorelateError):
    """Diagram term source fails to parse.

    Carries the character position of the offending token.
    """

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class TermTypeError(CorelateError):
    """Diagram term is grammatical but ill-typed.

    Carries the two mismatched arities.
    """

    def __init__(self, message, expected, actual):
        super().__init__(f"{message}: {expected} vs {actual}")
        self.expected = expected
        self.actual = actual
