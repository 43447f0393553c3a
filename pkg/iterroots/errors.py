"""Exception hierarchy for iterroots."""

from typing import Any, Optional


class IterRootsError(Exception):
    """Base class for every error raised by iterroots."""


class DivisionByZero(IterRootsError, ZeroDivisionError):
    """Inverse of the zero element was requested."""


class NonFiniteValue(IterRootsError, ArithmeticError):
    """An approximate computation produced NaN or infinity."""


class BackendMismatch(IterRootsError, TypeError):
    """Exact and approximate operands were mixed."""


class InvalidLinearMap(IterRootsError, ValueError):
    """A linear map z -> az + b was built with a = 0."""


class NotBijective(IterRootsError, ValueError):
    """A degree-one map with zero slope was given where a bijection is needed."""


class DegreeZero(IterRootsError, ValueError):
    """A constant polynomial was given where degree >= 1 is needed."""


class DegreeMismatch(IterRootsError, ValueError):
    """A polynomial has the wrong degree for the requested operation."""


class NormalizationError(IterRootsError, ValueError):
    """No linear conjugate of the polynomial is monic."""


class ExactRootUnavailable(NormalizationError):
    """The root needed for normalization does not lie in Q(w)."""


class NotCubeRootOfUnity(IterRootsError, ValueError):
    """A leading unit u with u^3 != 1 was given."""


class VariableMismatch(IterRootsError, ValueError):
    """Multivariate polynomials over different variable lists were combined."""


class InvalidDegreeSpec(IterRootsError, ValueError):
    """The requested root degree or order is not usable."""


class NotMonic(IterRootsError, ValueError):
    """The leading coefficient has no admissible root in Q(w)."""


class ParseError(IterRootsError, ValueError):
    """Text could not be parsed as a field element or polynomial."""

    def __init__(self, message: str, position: int = 0, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")


class ObstructionError(IterRootsError):
    """A mathematical gate (degree, membership, exact-root) failed."""

    def __init__(self, gate: str, message: str, record: Optional[Any] = None):
        self.gate = gate
        self.record = record
        super().__init__(f"{gate} gate: {message}")
