"""Coefficient fields: exact arithmetic in Q(w) and an approximate complex backend.

Q(w) = Q[x]/(x^2 + x + 1), w a primitive cube root of unity. Every element is
stored as p + q*w with rational p, q, reduced with w^2 = -1 - w.
"""

from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Union

import mpmath

from .errors import BackendMismatch, DivisionByZero, NonFiniteValue

logger = logging.getLogger(__name__)

# Rational numbers are always held reduced with a positive denominator.
Rational = Fraction

_SQRT3 = math.sqrt(3.0)
_TAU = 2.0 * math.pi


class Backend(str, Enum):
    """Coefficient backend of a value."""

    EXACT = "exact"
    APPROX = "approx"


@dataclass(frozen=True, eq=False)
class Eisenstein:
    """Exact element p + q*w of Q(w)."""

    p: Fraction
    q: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "p", Fraction(self.p))
        object.__setattr__(self, "q", Fraction(self.q))

    @classmethod
    def _lift(cls, other) -> "Eisenstein":
        if isinstance(other, Eisenstein):
            return other
        if isinstance(other, (int, Fraction)):
            return cls(other)
        if isinstance(other, (ApproxComplex, float, complex)):
            raise BackendMismatch(
                f"cannot combine exact element with {type(other).__name__}"
            )
        return NotImplemented

    def __eq__(self, other) -> bool:
        if isinstance(other, Eisenstein):
            return self.p == other.p and self.q == other.q
        if isinstance(other, (int, Fraction)):
            return self.q == 0 and self.p == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.q == 0:
            return hash(self.p)
        return hash((self.p, self.q))

    def __repr__(self) -> str:
        return f"Eisenstein({self.p}, {self.q})"

    def __str__(self) -> str:
        return format_element(self)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_zero(self) -> bool:
        return self.p == 0 and self.q == 0

    def __neg__(self) -> "Eisenstein":
        return Eisenstein(-self.p, -self.q)

    def __pos__(self) -> "Eisenstein":
        return self

    def __add__(self, other) -> "Eisenstein":
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return Eisenstein(self.p + other.p, self.q + other.q)

    __radd__ = __add__

    def __sub__(self, other) -> "Eisenstein":
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return Eisenstein(self.p - other.p, self.q - other.q)

    def __rsub__(self, other) -> "Eisenstein":
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other) -> "Eisenstein":
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        p, q, r, s = self.p, self.q, other.p, other.q
        return Eisenstein(p * r - q * s, p * s + q * r - q * s)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Eisenstein":
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other) -> "Eisenstein":
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, exponent: int) -> "Eisenstein":
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** -exponent
        result = ONE
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __abs__(self) -> float:
        """Modulus sqrt(norm); inf when it does not fit in a double."""
        try:
            return abs(self.embed())
        except (NonFiniteValue, OverflowError):
            return math.inf

    def conjugate(self) -> "Eisenstein":
        """Galois conjugate p + q*w^2."""
        return Eisenstein(self.p - self.q, -self.q)

    def norm(self) -> Fraction:
        """Field norm p^2 - pq + q^2, positive for nonzero elements."""
        return self.p * self.p - self.p * self.q + self.q * self.q

    def inverse(self) -> "Eisenstein":
        norm = self.norm()
        if norm == 0:
            raise DivisionByZero("zero has no inverse in Q(w)")
        conj = self.conjugate()
        return Eisenstein(conj.p / norm, conj.q / norm)

    def embed(self) -> "ApproxComplex":
        try:
            re = float(self.p - self.q / 2)
            im = float(self.q) * _SQRT3 / 2.0
        except OverflowError as e:
            raise NonFiniteValue(f"{self!r} is too large for approx mode") from e
        return ApproxComplex(complex(re, im))


@dataclass(frozen=True, eq=False)
class ApproxComplex:
    """Double-precision complex number; never NaN or infinite."""

    value: complex

    def __post_init__(self):
        value = complex(self.value)
        if not (math.isfinite(value.real) and math.isfinite(value.imag)):
            raise NonFiniteValue(f"non-finite complex value {value!r}")
        object.__setattr__(self, "value", value)

    @property
    def re(self) -> float:
        return self.value.real

    @property
    def im(self) -> float:
        return self.value.imag

    @classmethod
    def _lift(cls, other) -> "ApproxComplex":
        if isinstance(other, ApproxComplex):
            return other
        if isinstance(other, (int, float, complex, Fraction)):
            return cls(complex(other))
        if isinstance(other, Eisenstein):
            raise BackendMismatch("cannot combine approximate value with exact element")
        return NotImplemented

    def __eq__(self, other) -> bool:
        if isinstance(other, ApproxComplex):
            return self.value == other.value
        if isinstance(other, (int, float, complex, Fraction)):
            return self.value == complex(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.value)

    def __repr__(self) -> str:
        return f"ApproxComplex({self.value!r})"

    def __str__(self) -> str:
        return format_element(self)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_zero(self) -> bool:
        return self.value == 0

    def __neg__(self) -> "ApproxComplex":
        return ApproxComplex(-self.value)

    def __pos__(self) -> "ApproxComplex":
        return self

    def __add__(self, other) -> "ApproxComplex":
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return ApproxComplex(self.value + other.value)

    __radd__ = __add__

    def __sub__(self, other) -> "ApproxComplex":
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return ApproxComplex(self.value - other.value)

    def __rsub__(self, other) -> "ApproxComplex":
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return ApproxComplex(other.value - self.value)

    def __mul__(self, other) -> "ApproxComplex":
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return ApproxComplex(self.value * other.value)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "ApproxComplex":
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise DivisionByZero("division by zero")
        return ApproxComplex(self.value / other.value)

    def __rtruediv__(self, other) -> "ApproxComplex":
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, exponent: int) -> "ApproxComplex":
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return ONE_APPROX / self ** -exponent
        try:
            return ApproxComplex(self.value**exponent)
        except OverflowError as e:
            raise NonFiniteValue(
                f"overflow raising {self.value!r} to {exponent}"
            ) from e

    def __abs__(self) -> float:
        return abs(self.value)

    def inverse(self) -> "ApproxComplex":
        return ONE_APPROX / self

    def embed(self) -> "ApproxComplex":
        return self


FieldElement = Union[Eisenstein, ApproxComplex]

ZERO = Eisenstein(0)
ONE = Eisenstein(1)
OMEGA = Eisenstein(0, 1)
OMEGA_SQUARED = Eisenstein(-1, -1)
ONE_APPROX = ApproxComplex(1)

# The units of Q(w), i.e. its sixth roots of unity, in canonical order.
UNITS = (ONE, -ONE, OMEGA, -OMEGA, OMEGA_SQUARED, -OMEGA_SQUARED)
CUBE_ROOTS_OF_UNITY = (ONE, OMEGA, OMEGA_SQUARED)


@dataclass(frozen=True)
class Tolerance:
    """Relative tolerance with an absolute floor for approximate comparisons."""

    rel_tol: float = 1e-9
    abs_tol: float = 1e-12

    def threshold(self, scale: float) -> float:
        return max(self.rel_tol * scale, self.abs_tol)

    def close(self, x: FieldElement, y: FieldElement) -> bool:
        if isinstance(x, Eisenstein) and isinstance(y, Eisenstein):
            return x == y
        x, y = embed(x), embed(y)
        return abs(x.value - y.value) <= self.threshold(max(abs(x), abs(y)))

    def negligible(self, x: FieldElement, scale: float) -> bool:
        """Whether x vanishes relative to the magnitude `scale` of its terms."""
        if isinstance(x, Eisenstein):
            return x.is_zero()
        return abs(x) <= self.threshold(scale)


DEFAULT_TOLERANCE = Tolerance()


@dataclass(frozen=True)
class RootSet:
    """Roots of an equation y^n = x, with a flag telling whether all n were found."""

    roots: tuple
    complete: bool


def backend_of(x: FieldElement) -> Backend:
    if isinstance(x, Eisenstein):
        return Backend.EXACT
    if isinstance(x, ApproxComplex):
        return Backend.APPROX
    raise TypeError(f"not a field element: {x!r}")


def common_backend(*values) -> Backend:
    """Approx if any value is approximate, exact otherwise."""
    for value in values:
        if isinstance(value, (ApproxComplex, float, complex)):
            return Backend.APPROX
    return Backend.EXACT


def coerce(value, backend: Backend) -> FieldElement:
    """Bring an int, Fraction, float, complex or field element into `backend`."""
    if backend == Backend.EXACT:
        if isinstance(value, Eisenstein):
            return value
        if isinstance(value, (int, Fraction)):
            return Eisenstein(value)
        raise BackendMismatch(f"{value!r} has no exact representation")
    if isinstance(value, ApproxComplex):
        return value
    if isinstance(value, Eisenstein):
        return value.embed()
    return ApproxComplex(complex(value))


def zero(backend: Backend) -> FieldElement:
    return coerce(0, backend)


def one(backend: Backend) -> FieldElement:
    return coerce(1, backend)


def omega(backend: Backend) -> FieldElement:
    return coerce(OMEGA, backend)


def field_invert(x: Eisenstein) -> Eisenstein:
    """Multiplicative inverse in Q(w); raises DivisionByZero for 0."""
    return x.inverse()


def embed(x: FieldElement) -> ApproxComplex:
    """Numeric image under w -> (-1 + i*sqrt(3))/2."""
    if isinstance(x, (int, float, complex, Fraction)):
        return ApproxComplex(complex(x))
    return x.embed()


def _is_primary(z: Eisenstein) -> bool:
    # argument in (-pi/6, pi/6]; Im z = q*sqrt(3)/2, Re z = p - q/2
    re = z.p - z.q / 2
    return re > 0 and -2 * re < 3 * z.q <= 2 * re


def order_key(x: FieldElement) -> tuple:
    """Sort key: 1 < -1 < w < -w < w^2 < -w^2 on associates when exact.

    Approximate values sort by argument.
    """
    if isinstance(x, ApproxComplex):
        if x.is_zero():
            return (0.0, 0.0)
        angle = cmath.phase(x.value) % _TAU
        if angle >= _TAU - 1e-12:
            angle = 0.0
        return (angle, abs(x))
    if x.is_zero():
        return (-1, Fraction(0), Fraction(0))
    for index, unit in enumerate(UNITS):
        associate = x * unit.inverse()
        if _is_primary(associate):
            return (index, associate.p, associate.q)
    raise AssertionError(f"no primary associate for {x!r}")


def roots_of_unity(n: int, mode: Backend = Backend.EXACT) -> RootSet:
    """All n-th roots of unity available in `mode`, in canonical order."""
    if n < 1:
        raise ValueError(f"order must be positive, got {n}")
    if Backend(mode) == Backend.EXACT:
        roots = tuple(u for u in UNITS if u**n == ONE)
        return RootSet(roots, len(roots) == n)
    roots = tuple(
        ApproxComplex(cmath.exp(complex(0.0, _TAU * k / n))) for k in range(n)
    )
    return RootSet(tuple(sorted(roots, key=order_key)), True)


def _integer_root(m: int, n: int) -> int | None:
    """Exact n-th root of a nonnegative integer, or None."""
    if m < 2:
        return m
    digits = len(str(m)) // n + 20
    with mpmath.workdps(digits):
        guess = int(mpmath.nint(mpmath.root(m, n)))
    for candidate in (guess - 1, guess, guess + 1):
        if candidate >= 0 and candidate**n == m:
            return candidate
    return None


def _norm_is_power(x: Eisenstein, n: int) -> bool:
    norm = x.norm()
    return (
        _integer_root(norm.numerator, n) is not None
        and _integer_root(norm.denominator, n) is not None
    )


def _exact_nth_roots(x: Eisenstein, n: int) -> tuple:
    if x.is_zero() or n == 1:
        return (x,)
    if x in UNITS:
        return tuple(u for u in UNITS if u**n == x)
    if not _norm_is_power(x, n):
        return ()
    # If y^n = X/D with X in Z[w], then D*y is integral over Z[w], so lies in Z[w].
    den = math.lcm(x.p.denominator, x.q.denominator)
    target = Eisenstein(x.p * den, x.q * den) * den ** (n - 1)
    big_p, big_q = int(target.p), int(target.q)
    digits = max(len(str(abs(big_p))), len(str(abs(big_q)))) // n + 30
    found = set()
    with mpmath.workdps(digits):
        sqrt3 = mpmath.sqrt(3)
        w = mpmath.mpc(mpmath.mpf(-1) / 2, sqrt3 / 2)
        z = mpmath.mpc(big_p) + mpmath.mpc(big_q) * w
        for k in range(n):
            c = mpmath.root(z, n, k)
            t = int(mpmath.nint(2 * c.imag / sqrt3))
            s = int(mpmath.nint(c.real + mpmath.mpf(t) / 2))
            candidate = Eisenstein(s, t)
            if candidate**n == target:
                found.add(candidate / den)
    return tuple(sorted(found, key=order_key))


def _approx_nth_roots(x: ApproxComplex, n: int) -> tuple:
    if x.is_zero():
        return (x,)
    modulus = abs(x.value) ** (1.0 / n)
    theta = cmath.phase(x.value)
    roots = (
        ApproxComplex(cmath.rect(modulus, (theta + _TAU * k) / n)) for k in range(n)
    )
    return tuple(sorted(roots, key=order_key))


def nth_roots(x: FieldElement, n: int) -> RootSet:
    """Every y in the backend of x with y^n = x, in canonical order.

    Exact mode returns the roots lying in Q(w) and flags the set incomplete
    when fewer than n exist there.
    """
    if n < 1:
        raise ValueError(f"root order must be positive, got {n}")
    if isinstance(x, Eisenstein):
        roots = _exact_nth_roots(x, n)
        complete = x.is_zero() or len(roots) == n
        if not complete:
            logger.debug(f"only {len(roots)} of {n} roots of {x} lie in Q(w)")
        return RootSet(roots, complete)
    return RootSet(_approx_nth_roots(x, n), True)


def format_element(x: FieldElement) -> str:
    """Text form: `p/q+r/s*w` for exact elements, `a+bi` for approximate ones."""
    if isinstance(x, ApproxComplex):
        re, im = x.re, x.im
        if im == 0:
            return repr(re)
        if re == 0:
            return f"{im!r}i"
        sign = "-" if im < 0 else "+"
        return f"{re!r}{sign}{abs(im)!r}i"
    if x in _UNIT_TEXT:
        return _UNIT_TEXT[x]
    if x.q == 0:
        return str(x.p)
    if x.q == 1:
        w_text = "w"
    elif x.q == -1:
        w_text = "-w"
    else:
        w_text = f"{x.q}*w"
    if x.p == 0:
        return w_text
    return f"{x.p}{'' if w_text.startswith('-') else '+'}{w_text}"


_UNIT_TEXT = {
    ONE: "1",
    -ONE: "-1",
    OMEGA: "w",
    -OMEGA: "-w",
    OMEGA_SQUARED: "w^2",
    -OMEGA_SQUARED: "-w^2",
}
