"""Exact scalar arithmetic: Gaussian rationals and square-root-free comparisons.

All values here are immutable.  ``Scalar`` is a Gaussian rational
``re + im*i`` whose parts are :class:`fractions.Fraction`; arithmetic is
closed and exact, so repeated runs are bit-identical.  ``SqrtFraction`` and
``RootValue`` represent nonnegative reals of the form ``sqrt(q)`` and
``q**(1/(2n))`` for rational ``q``; they compare exactly by cross-powering,
and floating point only appears when a value is rendered for a report.
"""

from __future__ import annotations

import math
from fractions import Fraction

__all__ = [
    "Scalar",
    "ZERO",
    "ONE",
    "I",
    "as_scalar",
    "parse_fraction",
    "parse_scalar",
    "format_fraction",
    "format_scalar",
    "SqrtFraction",
    "RootValue",
    "sqrt_leq_sqrt_plus_multiple",
    "fraction_root_float",
]

_ZERO_FRACTION = Fraction(0)


class Scalar:
    """A Gaussian rational ``re + im*i`` with exact fraction components."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)

    @classmethod
    def _raw(cls, re, im):
        s = object.__new__(cls)
        s.re = re
        s.im = im
        return s

    def is_zero(self):
        return not self.re and not self.im

    def is_real(self):
        return not self.im

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def conjugate(self):
        return Scalar._raw(self.re, -self.im)

    def abs2(self):
        """Exact squared modulus ``re**2 + im**2`` as a Fraction."""
        if not self.im:
            return self.re * self.re
        return self.re * self.re + self.im * self.im

    def __add__(self, other):
        other = as_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        return Scalar._raw(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = as_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        return Scalar._raw(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = as_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        return Scalar._raw(other.re - self.re, other.im - self.im)

    def __neg__(self):
        return Scalar._raw(-self.re, -self.im)

    def __mul__(self, other):
        if type(other) is Scalar:
            if not self.im and not other.im:
                return Scalar._raw(self.re * other.re, _ZERO_FRACTION)
            return Scalar._raw(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        if isinstance(other, (int, Fraction)):
            return Scalar._raw(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def inverse(self):
        a2 = self.abs2()
        if not a2:
            raise ZeroDivisionError("division by zero scalar")
        return Scalar._raw(self.re / a2, -self.im / a2)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return Scalar._raw(self.re / other, self.im / other)
        other = as_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = as_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __eq__(self, other):
        other = as_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def to_complex(self):
        return complex(self.re, self.im)

    def __repr__(self):
        if not self.im:
            return f"Scalar({self.re})"
        return f"Scalar({self.re}, {self.im})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar(0, 1)


def as_scalar(value):
    """Coerce ints, Fractions and Scalars to Scalar; NotImplemented otherwise."""
    if type(value) is Scalar:
        return value
    if isinstance(value, (int, Fraction)):
        return Scalar(value)
    return NotImplemented


def parse_fraction(text):
    """Parse ``"a/b"`` or ``"a"`` into an exact Fraction (integers only)."""
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"expected a rational string, got {text!r}")
    parts = text.strip().split("/")
    try:
        if len(parts) == 1:
            return Fraction(int(parts[0]))
        if len(parts) == 2:
            return Fraction(int(parts[0]), int(parts[1]))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"malformed rational {text!r}: {exc}") from None
    raise ValueError(f"malformed rational {text!r}")


def parse_scalar(value):
    """Parse the config encoding of a scalar.

    Real values are written ``"a/b"``; complex values are two-element lists
    ``["a/b", "c/d"]`` holding real and imaginary parts.
    """
    if isinstance(value, (str, int)):
        return Scalar(parse_fraction(value))
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return Scalar(parse_fraction(value[0]), parse_fraction(value[1]))
    raise ValueError(f"malformed scalar {value!r}")


def format_fraction(q):
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_scalar(s):
    if s.is_real():
        return format_fraction(s.re)
    return [format_fraction(s.re), format_fraction(s.im)]


def fraction_root_float(q, k):
    """Float value of ``q**(1/k)`` for a nonnegative Fraction q, overflow-safe."""
    if q < 0:
        raise ValueError("negative radicand")
    if not q:
        return 0.0
    log2 = math.log2(q.numerator) - math.log2(q.denominator)
    return 2.0 ** (log2 / k)


class SqrtFraction:
    """The exact nonnegative real ``sqrt(squared)`` for a rational ``squared``.

    Comparisons against other square roots and against rationals are done on
    the squares, so they are exact; ``to_float`` is for reporting only.
    """

    __slots__ = ("squared",)

    def __init__(self, squared):
        squared = squared if type(squared) is Fraction else Fraction(squared)
        if squared < 0:
            raise ValueError("SqrtFraction needs a nonnegative square")
        self.squared = squared

    @classmethod
    def of_abs(cls, scalar):
        return cls(scalar.abs2())

    def is_zero(self):
        return not self.squared

    def __bool__(self):
        return bool(self.squared)

    def _square_of(self, other):
        if isinstance(other, SqrtFraction):
            return other.squared
        if isinstance(other, (int, Fraction)):
            if other < 0:
                return None  # sqrt >= 0 > other
            return Fraction(other) ** 2
        return NotImplemented

    def __le__(self, other):
        sq = self._square_of(other)
        if sq is NotImplemented:
            return NotImplemented
        if sq is None:
            return False
        return self.squared <= sq

    def __lt__(self, other):
        sq = self._square_of(other)
        if sq is NotImplemented:
            return NotImplemented
        if sq is None:
            return False
        return self.squared < sq

    def __ge__(self, other):
        sq = self._square_of(other)
        if sq is NotImplemented:
            return NotImplemented
        if sq is None:
            return True
        return self.squared >= sq

    def __gt__(self, other):
        sq = self._square_of(other)
        if sq is NotImplemented:
            return NotImplemented
        if sq is None:
            return True
        return self.squared > sq

    def __eq__(self, other):
        sq = self._square_of(other)
        if sq is NotImplemented:
            return NotImplemented
        if sq is None:
            return False
        return self.squared == sq

    def __hash__(self):
        return hash(("SqrtFraction", self.squared))

    def __mul__(self, other):
        if isinstance(other, SqrtFraction):
            return SqrtFraction(self.squared * other.squared)
        if isinstance(other, (int, Fraction)):
            return SqrtFraction(self.squared * Fraction(other) ** 2)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, SqrtFraction):
            return SqrtFraction(self.squared / other.squared)
        if isinstance(other, (int, Fraction)):
            return SqrtFraction(self.squared / Fraction(other) ** 2)
        return NotImplemented

    def to_float(self):
        return fraction_root_float(self.squared, 2)

    def __repr__(self):
        return f"SqrtFraction(sqrt({self.squared}))"


def sqrt_leq_sqrt_plus_multiple(a, b, m, c):
    """Decide ``sqrt(a) <= sqrt(b) + m*sqrt(c)`` exactly.

    ``a``, ``b``, ``c`` are nonnegative rationals and ``m >= 0``.  Squaring
    twice removes both radicals; every intermediate stays rational.
    """
    a, b, c, m = Fraction(a), Fraction(b), Fraction(c), Fraction(m)
    if a < 0 or b < 0 or c < 0 or m < 0:
        raise ValueError("all quantities must be nonnegative")
    # sqrt(a) <= sqrt(b) + m sqrt(c)  <=>  a - b - m^2 c <= 2 m sqrt(b c)
    lhs = a - b - m * m * c
    if lhs <= 0:
        return True
    return lhs * lhs <= 4 * m * m * b * c


class RootValue:
    """The exact nonnegative real ``squared**(1/(2*degree))``.

    Used for truncated Hadamard-type estimates: ``squared`` holds the exact
    squared norm ratio and ``degree`` the root index.  ``u <= v`` is decided
    by comparing ``u.squared**v.degree`` with ``v.squared**u.degree``.
    """

    __slots__ = ("squared", "degree")

    def __init__(self, squared, degree):
        squared = squared if type(squared) is Fraction else Fraction(squared)
        if squared < 0:
            raise ValueError("RootValue needs a nonnegative square")
        if degree < 1:
            raise ValueError("RootValue needs degree >= 1")
        self.squared = squared
        self.degree = degree

    def __le__(self, other):
        return self.squared ** other.degree <= other.squared ** self.degree

    def __lt__(self, other):
        return self.squared ** other.degree < other.squared ** self.degree

    def __ge__(self, other):
        return self.squared ** other.degree >= other.squared ** self.degree

    def __gt__(self, other):
        return self.squared ** other.degree > other.squared ** self.degree

    def __eq__(self, other):
        if not isinstance(other, RootValue):
            return NotImplemented
        return self.squared ** other.degree == other.squared ** self.degree

    def __hash__(self):
        return hash(("RootValue", self.squared, self.degree))

    def equals_rational(self, r):
        """Exact test of ``value == r`` for a rational ``r >= 0``."""
        r = Fraction(r)
        if r < 0:
            return False
        return self.squared == r ** (2 * self.degree)

    def to_float(self):
        return fraction_root_float(self.squared, 2 * self.degree)

    def __repr__(self):
        return f"RootValue({self.squared}**(1/{2 * self.degree}))"
