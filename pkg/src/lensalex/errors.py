"""Exception types shared across the package."""


class LensAlexError(Exception):
    """Base class for domain errors (CLI exit code 1)."""


class NotDivisible(LensAlexError):
    pass


class NotCoprime(LensAlexError):
    pass


class VariableMismatch(LensAlexError):
    pass


class DiagramError(LensAlexError):
    """Raised when a diagram fails validation; carries the violation list."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


class DegenerateFlux(LensAlexError):
    pass


class UnsupportedChainDepth(LensAlexError):
    pass


class NotInternalCrossing(LensAlexError):
    pass


class PreconditionError(LensAlexError):
    pass


class RouteDisagreement(LensAlexError):
    pass


class AmbiguousOverOrder(LensAlexError):
    pass


class ParseError(Exception):
    """Malformed input (CLI exit code 2)."""
