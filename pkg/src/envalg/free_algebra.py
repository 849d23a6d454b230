"""Exact truncated arithmetic in the free associative algebra on ``d`` letters.

A :class:`FreeSeries` is a sparse table mapping words over ``{0, .., d-1}``
to nonzero Gaussian-rational coefficients, truncated at a fixed total degree.
Concatenation product, exp, log, the two-letter BCH series and bidegree
projections are all exact; products silently discard the words whose length
exceeds the truncation degree, which makes every nonconstant series nilpotent
and keeps exp/log finite sums.

The truncation degree is a hard parameter: series with different degrees (or
alphabets) never mix, so the provenance of discarded terms stays explicit.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .errors import ConstantTermError, DegreeOverflowError, SeriesMismatchError
from .scalars import ONE, Scalar, as_scalar

__all__ = [
    "FreeSeries",
    "fa_mul",
    "fa_exp",
    "fa_log",
    "fa_bch",
    "fa_bidegree_project",
    "fa_check_exp_identity",
    "ExpIdentityReport",
]


class FreeSeries:
    """Truncated noncommutative power series with exact coefficients.

    ``terms`` maps words (tuples of letters) to nonzero :class:`Scalar`
    values; the empty word is the constant term.  Instances are treated as
    immutable: no operation mutates an existing series.
    """

    __slots__ = ("alphabet_size", "trunc_degree", "terms")

    def __init__(self, alphabet_size, trunc_degree, terms=None):
        if alphabet_size < 1:
            raise ValueError("alphabet_size must be positive")
        if trunc_degree < 0:
            raise ValueError("trunc_degree must be nonnegative")
        self.alphabet_size = alphabet_size
        self.trunc_degree = trunc_degree
        clean = {}
        for word, coeff in (terms or {}).items():
            word = tuple(word)
            if len(word) > trunc_degree:
                raise ValueError(f"word {word} exceeds truncation degree {trunc_degree}")
            if any(not (0 <= l < alphabet_size) for l in word):
                raise ValueError(f"word {word} uses letters outside the alphabet")
            coeff = as_scalar(coeff)
            if coeff is NotImplemented:
                raise TypeError("coefficients must be rational or Gaussian rational")
            if coeff:
                clean[word] = coeff
        self.terms = clean

    @classmethod
    def _raw(cls, alphabet_size, trunc_degree, terms):
        s = object.__new__(cls)
        s.alphabet_size = alphabet_size
        s.trunc_degree = trunc_degree
        s.terms = terms
        return s

    @classmethod
    def zero(cls, alphabet_size, trunc_degree):
        return cls._raw(alphabet_size, trunc_degree, {})

    @classmethod
    def one(cls, alphabet_size, trunc_degree):
        return cls._raw(alphabet_size, trunc_degree, {(): ONE})

    @classmethod
    def letter(cls, alphabet_size, trunc_degree, index):
        if not (0 <= index < alphabet_size):
            raise ValueError("letter index outside the alphabet")
        if trunc_degree < 1:
            raise ValueError("truncation degree too small for a letter")
        return cls._raw(alphabet_size, trunc_degree, {(index,): ONE})

    def coefficient(self, word):
        return self.terms.get(tuple(word), Scalar(0))

    def is_zero(self):
        return not self.terms

    def _check_compatible(self, other):
        if self.alphabet_size != other.alphabet_size:
            raise SeriesMismatchError(
                f"alphabet mismatch: {self.alphabet_size} letters vs {other.alphabet_size}"
            )
        if self.trunc_degree != other.trunc_degree:
            raise SeriesMismatchError(
                f"truncation degree mismatch: {self.trunc_degree} vs {other.trunc_degree}"
            )

    def __add__(self, other):
        if not isinstance(other, FreeSeries):
            return NotImplemented
        self._check_compatible(other)
        out = dict(self.terms)
        for word, coeff in other.terms.items():
            acc = out.get(word)
            acc = coeff if acc is None else acc + coeff
            if acc:
                out[word] = acc
            elif word in out:
                del out[word]
        return FreeSeries._raw(self.alphabet_size, self.trunc_degree, out)

    def __sub__(self, other):
        if not isinstance(other, FreeSeries):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return FreeSeries._raw(
            self.alphabet_size,
            self.trunc_degree,
            {w: -c for w, c in self.terms.items()},
        )

    def scale(self, value):
        value = as_scalar(value)
        if value is NotImplemented:
            raise TypeError("scale expects a rational or Gaussian rational")
        if not value:
            return FreeSeries.zero(self.alphabet_size, self.trunc_degree)
        return FreeSeries._raw(
            self.alphabet_size,
            self.trunc_degree,
            {w: c * value for w, c in self.terms.items()},
        )

    def __rmul__(self, value):
        if isinstance(value, (int, Fraction, Scalar)):
            return self.scale(value)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            return self.scale(other)
        if not isinstance(other, FreeSeries):
            return NotImplemented
        self._check_compatible(other)
        cut = self.trunc_degree
        out = {}
        for u, cu in self.terms.items():
            room = cut - len(u)
            for v, cv in other.terms.items():
                if len(v) > room:
                    continue
                word = u + v
                prod = cu * cv
                acc = out.get(word)
                acc = prod if acc is None else acc + prod
                if acc:
                    out[word] = acc
                elif word in out:
                    del out[word]
        return FreeSeries._raw(self.alphabet_size, self.trunc_degree, out)

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("powers must be nonnegative integers")
        result = FreeSeries.one(self.alphabet_size, self.trunc_degree)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if not isinstance(other, FreeSeries):
            return NotImplemented
        return (
            self.alphabet_size == other.alphabet_size
            and self.trunc_degree == other.trunc_degree
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash(
            (self.alphabet_size, self.trunc_degree, frozenset(self.terms.items()))
        )

    def homogeneous_part(self, degree):
        return FreeSeries._raw(
            self.alphabet_size,
            self.trunc_degree,
            {w: c for w, c in self.terms.items() if len(w) == degree},
        )

    def max_degree_present(self):
        return max((len(w) for w in self.terms), default=-1)

    def __repr__(self):
        if not self.terms:
            return "FreeSeries(0)"
        names = "XYZUVW"
        bits = []
        for word in sorted(self.terms, key=lambda w: (len(w), w)):
            label = "".join(names[l] if self.alphabet_size <= 6 else f"x{l}" for l in word)
            bits.append(f"{self.terms[word]}*{label or '1'}")
        return "FreeSeries(" + " + ".join(bits) + f"; N={self.trunc_degree})"


def fa_mul(a, b):
    """Concatenation product, discarding words longer than the truncation."""
    if not isinstance(a, FreeSeries) or not isinstance(b, FreeSeries):
        raise TypeError("fa_mul expects two FreeSeries")
    return a * b


def fa_exp(a):
    """Exponential ``sum a^k / k!``; requires zero constant term."""
    c0 = a.terms.get(())
    if c0:
        raise ConstantTermError(f"exp needs zero constant term, found {c0}")
    result = FreeSeries.one(a.alphabet_size, a.trunc_degree)
    term = result
    for k in range(1, a.trunc_degree + 1):
        term = (term * a).scale(Fraction(1, k))
        if term.is_zero():
            break
        result = result + term
    return result


def fa_log(a):
    """Logarithm ``sum (-1)^(k+1) (a-1)^k / k``; requires constant term 1."""
    c0 = a.terms.get(())
    if c0 != ONE:
        raise ConstantTermError(f"log needs constant term 1, found {c0 or 0}")
    u = a - FreeSeries.one(a.alphabet_size, a.trunc_degree)
    result = FreeSeries.zero(a.alphabet_size, a.trunc_degree)
    power = FreeSeries.one(a.alphabet_size, a.trunc_degree)
    for k in range(1, a.trunc_degree + 1):
        power = power * u
        if power.is_zero():
            break
        result = result + power.scale(Fraction((-1) ** (k + 1), k))
    return result


_BCH_CACHE = {}


def fa_bch(N):
    """The two-letter BCH series ``log(exp(X) exp(Y))`` truncated at degree N.

    Computed directly from the exp/log definitions so it serves as its own
    oracle; the degree-1 part is ``X + Y`` and the degree-2 part is
    ``(XY - YX)/2``.
    """
    if N < 1:
        raise ValueError("fa_bch needs N >= 1")
    cached = _BCH_CACHE.get(N)
    if cached is None:
        x = FreeSeries.letter(2, N, 0)
        y = FreeSeries.letter(2, N, 1)
        cached = fa_log(fa_exp(x) * fa_exp(y))
        _BCH_CACHE[N] = cached
    return cached


def fa_bidegree_project(a, m, n):
    """Keep exactly the words with ``m`` letters X and ``n`` letters Y."""
    if a.alphabet_size != 2:
        raise SeriesMismatchError("bidegree projection needs a two-letter alphabet")
    if m + n > a.trunc_degree:
        raise DegreeOverflowError(
            f"bidegree ({m},{n}) exceeds truncation degree {a.trunc_degree}"
        )
    keep = {
        w: c
        for w, c in a.terms.items()
        if len(w) == m + n and sum(1 for l in w if l == 0) == m
    }
    return FreeSeries._raw(2, a.trunc_degree, keep)


@dataclass(frozen=True)
class ExpIdentityReport:
    """Outcome of the exact two-sided exponential-law check at bidegree (m, n)."""

    m: int
    n: int
    coefficient_identity_ok: bool
    product_identity_ok: bool

    @property
    def ok(self):
        return self.coefficient_identity_ok and self.product_identity_ok

    def __str__(self):
        status = "PASS" if self.ok else "FAIL"
        return (
            f"exp-identity (m={self.m}, n={self.n}): {status} "
            f"[bidegree {self.coefficient_identity_ok}, product {self.product_identity_ok}]"
        )


def fa_check_exp_identity(m, n):
    """Exactly verify ``x^m y^n / (m! n!) = sum_k T_{m,n}((x*y)^k) / k!``.

    Also confirms ``exp(X) exp(Y) = exp(Z)`` modulo degree ``m+n+1`` for the
    BCH series ``Z`` at truncation ``m+n``.  Both checks must PASS; a FAIL
    indicates an implementation bug, never an acceptable outcome.
    """
    if m < 0 or n < 0 or m + n < 1:
        raise ValueError("need m, n >= 0 with m + n >= 1")
    N = m + n
    z = fa_bch(N)
    lhs = FreeSeries(2, N, {(0,) * m + (1,) * n: Fraction(1, factorial(m) * factorial(n))})
    rhs = FreeSeries.zero(2, N)
    power = FreeSeries.one(2, N)
    for k in range(0, N + 1):
        if k:
            power = power * z
        rhs = rhs + fa_bidegree_project(power, m, n).scale(Fraction(1, factorial(k)))
    x = FreeSeries.letter(2, N, 0)
    y = FreeSeries.letter(2, N, 1)
    product_ok = fa_exp(x) * fa_exp(y) == fa_exp(z)
    return ExpIdentityReport(m, n, lhs == rhs, product_ok)
