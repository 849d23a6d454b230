"""Finite-dimensional Lie algebras from structure constants, and exact U(g).

A :class:`LieAlgebraSpec` stores the brackets ``[e_i, e_j] = sum_k c_ijk e_k``
for ``i < j`` together with positive weights defining the weighted-l1
seminorm ``p(x) = sum_i w_i |x_i|``.  On top of it live exact PBW normal
forms (:class:`PBWPoly`), the ``*`` involution with ``x^* = -x``, and the
BCH product evaluated inside g via right-normed bracketing.

Monomials are kept in ascending basis order (declaration order); rewriting
``x_j x_i -> x_i x_j + [x_j, x_i]`` terminates because each step either
shortens the word or removes an inversion, and the result is independent of
the rewrite order.  Normal forms of words are memoized per spec.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from . import free_algebra
from .errors import SpecMismatchError
from .scalars import ONE, Scalar, as_scalar

__all__ = [
    "LieAlgebraSpec",
    "GVector",
    "PBWPoly",
    "JacobiReport",
    "SubmultReport",
    "jacobi_validate",
    "bracket",
    "submult_check",
    "pbw_reduce",
    "pbw_mul",
    "star",
    "bch_in_g",
    "monomial_name",
]


class LieAlgebraSpec:
    """Structure constants, basis names and seminorm weights of a Lie algebra.

    ``structure`` maps pairs ``(i, j)`` with ``i < j`` to ``{k: c_ijk}``;
    antisymmetry is implicit.  Structure constants must be real rationals
    (the Lie algebra itself is real; complex coefficients live in vectors
    and enveloping-algebra elements).  Instances are immutable after
    construction apart from internal normal-form caches.
    """

    __slots__ = (
        "dim",
        "basis_names",
        "weights",
        "_table",
        "_right_cache",
        "_nf_cache",
        "_star_cache",
    )

    def __init__(self, dim, basis_names, structure, weights):
        if dim < 1:
            raise ValueError("dim must be >= 1")
        basis_names = tuple(str(n) for n in basis_names)
        if len(basis_names) != dim:
            raise ValueError(f"expected {dim} basis names, got {len(basis_names)}")
        if len(set(basis_names)) != dim:
            raise ValueError("basis names must be distinct")
        weights = tuple(Fraction(w) for w in weights)
        if len(weights) != dim:
            raise ValueError(f"expected {dim} weights, got {len(weights)}")
        if any(w <= 0 for w in weights):
            raise ValueError("weights must be strictly positive")
        table = {}
        for (i, j), row in structure.items():
            if not (0 <= i < j < dim):
                raise ValueError(f"structure key ({i},{j}) must satisfy 0 <= i < j < dim")
            clean = {}
            for k, c in row.items():
                if not (0 <= k < dim):
                    raise ValueError(f"structure target index {k} out of range")
                c = as_scalar(c)
                if c is NotImplemented or not c.is_real():
                    raise ValueError("structure constants must be real rationals")
                if c:
                    clean[k] = c
            if clean:
                table[(i, j)] = clean
        self.dim = dim
        self.basis_names = basis_names
        self.weights = weights
        self._table = table
        self._right_cache = {}
        self._nf_cache = {}
        self._star_cache = {}

    def bracket_rows(self):
        """Iterate stored ``((i, j), {k: c})`` pairs with i < j."""
        return self._table.items()

    def bracket_of(self, i, j):
        """``[e_i, e_j]`` as ``{k: Scalar}`` for any index order."""
        if i == j:
            return {}
        if i < j:
            return self._table.get((i, j), {})
        row = self._table.get((j, i))
        if not row:
            return {}
        return {k: -c for k, c in row.items()}

    def basis_vector(self, i):
        coeffs = [Scalar(0)] * self.dim
        coeffs[i] = ONE
        return GVector(self, tuple(coeffs))

    def _canonical(self):
        return (
            self.dim,
            self.basis_names,
            self.weights,
            tuple(
                (key, tuple(sorted((k, (c.re, c.im)) for k, c in row.items())))
                for key, row in sorted(self._table.items())
            ),
        )

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, LieAlgebraSpec):
            return NotImplemented
        return self._canonical() == other._canonical()

    def __hash__(self):
        return hash(self._canonical())

    def __repr__(self):
        return f"LieAlgebraSpec(dim={self.dim}, basis={'/'.join(self.basis_names)})"


def _same_spec(a, b):
    if a is b:
        return True
    return a == b


def _check_same_spec(a, b, what):
    if not _same_spec(a, b):
        raise SpecMismatchError(f"{what} across different Lie algebra specs")


class GVector:
    """An element of g (or its complexification) in basis coordinates."""

    __slots__ = ("spec", "coeffs")

    def __init__(self, spec, coeffs):
        coeffs = tuple(as_scalar(c) for c in coeffs)
        if any(c is NotImplemented for c in coeffs):
            raise TypeError("GVector coefficients must be scalars")
        if len(coeffs) != spec.dim:
            raise ValueError(f"expected {spec.dim} coefficients, got {len(coeffs)}")
        self.spec = spec
        self.coeffs = coeffs

    def is_real(self):
        return all(c.is_real() for c in self.coeffs)

    def is_zero(self):
        return all(not c for c in self.coeffs)

    def __add__(self, other):
        if not isinstance(other, GVector):
            return NotImplemented
        _check_same_spec(self.spec, other.spec, "adding vectors")
        return GVector(self.spec, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        if not isinstance(other, GVector):
            return NotImplemented
        _check_same_spec(self.spec, other.spec, "subtracting vectors")
        return GVector(self.spec, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return GVector(self.spec, tuple(-c for c in self.coeffs))

    def scale(self, value):
        value = as_scalar(value)
        if value is NotImplemented:
            raise TypeError("scale expects a scalar")
        return GVector(self.spec, tuple(c * value for c in self.coeffs))

    def __rmul__(self, value):
        if isinstance(value, (int, Fraction, Scalar)):
            return self.scale(value)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, GVector):
            return NotImplemented
        return _same_spec(self.spec, other.spec) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((id(self.spec), self.coeffs))

    def seminorm(self):
        """The weighted-l1 seminorm ``sum w_i |x_i|``, exact for real vectors."""
        if not self.is_real():
            raise ValueError("exact seminorm is defined for real vectors only")
        return sum(
            (w * abs(c.re) for w, c in zip(self.spec.weights, self.coeffs)),
            Fraction(0),
        )

    def seminorm_float(self):
        return float(
            sum(
                float(w) * abs(c.to_complex())
                for w, c in zip(self.spec.weights, self.coeffs)
            )
        )

    def __repr__(self):
        parts = [
            f"{c}*{name}"
            for c, name in zip(self.coeffs, self.spec.basis_names)
            if c
        ]
        return "GVector(" + (" + ".join(parts) or "0") + ")"


def bracket(x, y):
    """Exact bracket ``[x, y]`` via structure constants."""
    _check_same_spec(x.spec, y.spec, "bracketing vectors")
    spec = x.spec
    out = [Scalar(0)] * spec.dim
    for (i, j), row in spec.bracket_rows():
        factor = x.coeffs[i] * y.coeffs[j] - x.coeffs[j] * y.coeffs[i]
        if not factor:
            continue
        for k, c in row.items():
            out[k] = out[k] + factor * c
    return GVector(spec, tuple(out))


@dataclass(frozen=True)
class JacobiReport:
    ok: bool
    witness: Optional[Tuple[int, int, int]] = None

    def __str__(self):
        if self.ok:
            return "jacobi: PASS"
        return f"jacobi: FAIL at triple {self.witness}"


def jacobi_validate(spec):
    """Check ``[e_i,[e_j,e_k]] + [e_j,[e_k,e_i]] + [e_k,[e_i,e_j]] = 0`` exactly."""
    basis = [spec.basis_vector(i) for i in range(spec.dim)]
    for i in range(spec.dim):
        for j in range(i + 1, spec.dim):
            for k in range(j + 1, spec.dim):
                total = (
                    bracket(basis[i], bracket(basis[j], basis[k]))
                    + bracket(basis[j], bracket(basis[k], basis[i]))
                    + bracket(basis[k], bracket(basis[i], basis[j]))
                )
                if not total.is_zero():
                    return JacobiReport(False, (i, j, k))
    return JacobiReport(True)


@dataclass(frozen=True)
class SubmultReport:
    ok: bool
    witness: Optional[Tuple[int, int]] = None
    lhs: Optional[Fraction] = None
    rhs: Optional[Fraction] = None

    def __str__(self):
        if self.ok:
            return "submultiplicative: PASS"
        return (
            f"submultiplicative: FAIL at pair {self.witness}: "
            f"{self.lhs} > {self.rhs}"
        )


def submult_check(spec):
    """Check the vertex condition ``sum_k w_k |c_ijk| <= w_i w_j`` for i < j.

    For the weighted-l1 seminorm this is equivalent to submultiplicativity
    ``p([x,y]) <= p(x) p(y)``: the unit ball is the convex hull of the
    vertices ``+-e_i / w_i`` and the bracket is bilinear.
    """
    for i in range(spec.dim):
        for j in range(i + 1, spec.dim):
            row = spec.bracket_of(i, j)
            lhs = sum((spec.weights[k] * abs(c.re) for k, c in row.items()), Fraction(0))
            rhs = spec.weights[i] * spec.weights[j]
            if lhs > rhs:
                return SubmultReport(False, (i, j), lhs, rhs)
    return SubmultReport(True)


# ---------------------------------------------------------------------------
# PBW word engine.  Normal words are nondecreasing letter tuples; the two
# helpers below rewrite products into normal form with memoization per spec.
# ---------------------------------------------------------------------------


def _acc(table, word, coeff):
    got = table.get(word)
    got = coeff if got is None else got + coeff
    if got:
        table[word] = got
    elif word in table:
        del table[word]


def _right_letter(spec, word, letter):
    """Normal form of ``x^word * e_letter`` as ``{normal word: Scalar}``.

    ``word`` must already be normal (nondecreasing).  The rewrite
    ``x^w x_j x_l = x^w x_l x_j + x^w [x_j, x_l]`` recurses on strictly
    smaller (length, inversion) ranks, so the recursion terminates.
    """
    cache = spec._right_cache
    key = (word, letter)
    hit = cache.get(key)
    if hit is not None:
        return hit
    if not word or word[-1] <= letter:
        result = {word + (letter,): ONE}
    else:
        prefix, j = word[:-1], word[-1]
        result = {}
        for w, c in _right_letter(spec, prefix, letter).items():
            for w2, c2 in _right_letter(spec, w, j).items():
                _acc(result, w2, c * c2)
        for k, ck in spec.bracket_of(j, letter).items():
            for w2, c2 in _right_letter(spec, prefix, k).items():
                _acc(result, w2, ck * c2)
    cache[key] = result
    return result


def _poly_right_letter(spec, table, letter):
    out = {}
    for word, coeff in table.items():
        for w, c in _right_letter(spec, word, letter).items():
            _acc(out, w, coeff * c)
    return out


def _normal_form(spec, word):
    """Normal form of an arbitrary word as ``{normal word: Scalar}``."""
    word = tuple(word)
    cached = spec._nf_cache.get(word)
    if cached is not None:
        return cached
    table = {(): ONE}
    for letter in word:
        table = _poly_right_letter(spec, table, letter)
    spec._nf_cache[word] = table
    return table


def _word_of_alpha(alpha):
    out = []
    for i, a in enumerate(alpha):
        out.extend((i,) * a)
    return tuple(out)


def _alpha_of_word(word, dim):
    alpha = [0] * dim
    for l in word:
        alpha[l] += 1
    return tuple(alpha)


def monomial_name(spec, alpha):
    """Human-readable PBW monomial like ``p^2*q`` (``1`` for the empty index)."""
    bits = []
    for name, a in zip(spec.basis_names, alpha):
        if a == 1:
            bits.append(name)
        elif a > 1:
            bits.append(f"{name}^{a}")
    return "*".join(bits) or "1"


class PBWPoly:
    """Element of U(g) in PBW normal form: multi-index -> nonzero Scalar."""

    __slots__ = ("spec", "terms")

    def __init__(self, spec, terms=None):
        clean = {}
        for alpha, coeff in (terms or {}).items():
            alpha = tuple(alpha)
            if len(alpha) != spec.dim or any(a < 0 for a in alpha):
                raise ValueError(f"bad multi-index {alpha} for dim {spec.dim}")
            coeff = as_scalar(coeff)
            if coeff is NotImplemented:
                raise TypeError("PBW coefficients must be scalars")
            if coeff:
                clean[alpha] = coeff
        self.spec = spec
        self.terms = clean

    @classmethod
    def _raw(cls, spec, terms):
        p = object.__new__(cls)
        p.spec = spec
        p.terms = terms
        return p

    @classmethod
    def zero(cls, spec):
        return cls._raw(spec, {})

    @classmethod
    def one(cls, spec):
        return cls._raw(spec, {(0,) * spec.dim: ONE})

    @classmethod
    def monomial(cls, spec, alpha, coeff=ONE):
        return cls(spec, {tuple(alpha): coeff})

    @classmethod
    def generator(cls, spec, i):
        alpha = [0] * spec.dim
        alpha[i] = 1
        return cls._raw(spec, {tuple(alpha): ONE})

    @classmethod
    def from_gvector(cls, x):
        terms = {}
        for i, c in enumerate(x.coeffs):
            if c:
                alpha = [0] * x.spec.dim
                alpha[i] = 1
                terms[tuple(alpha)] = c
        return cls._raw(x.spec, terms)

    @classmethod
    def _from_words(cls, spec, word_table):
        terms = {}
        for word, coeff in word_table.items():
            _acc(terms, _alpha_of_word(word, spec.dim), coeff)
        return cls._raw(spec, terms)

    def degree(self):
        """Max total degree of the stored monomials; -1 for the zero element."""
        return max((sum(a) for a in self.terms), default=-1)

    def is_zero(self):
        return not self.terms

    def coefficient(self, alpha):
        return self.terms.get(tuple(alpha), Scalar(0))

    def __add__(self, other):
        if not isinstance(other, PBWPoly):
            return NotImplemented
        _check_same_spec(self.spec, other.spec, "adding U(g) elements")
        out = dict(self.terms)
        for alpha, coeff in other.terms.items():
            _acc(out, alpha, coeff)
        return PBWPoly._raw(self.spec, out)

    def __sub__(self, other):
        if not isinstance(other, PBWPoly):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return PBWPoly._raw(self.spec, {a: -c for a, c in self.terms.items()})

    def scale(self, value):
        value = as_scalar(value)
        if value is NotImplemented:
            raise TypeError("scale expects a scalar")
        if not value:
            return PBWPoly.zero(self.spec)
        return PBWPoly._raw(self.spec, {a: c * value for a, c in self.terms.items()})

    def __rmul__(self, value):
        if isinstance(value, (int, Fraction, Scalar)):
            return self.scale(value)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            return self.scale(other)
        if isinstance(other, PBWPoly):
            return pbw_mul(self, other)
        return NotImplemented

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("powers must be nonnegative integers")
        result = PBWPoly.one(self.spec)
        for _ in range(n):
            result = pbw_mul(result, self)
        return result

    def __eq__(self, other):
        if not isinstance(other, PBWPoly):
            return NotImplemented
        return _same_spec(self.spec, other.spec) and self.terms == other.terms

    def __hash__(self):
        return hash((id(self.spec), frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "PBWPoly(0)"
        bits = []
        for alpha in sorted(self.terms, key=lambda a: (sum(a), a)):
            bits.append(f"{self.terms[alpha]}*{monomial_name(self.spec, alpha)}")
        return "PBWPoly(" + " + ".join(bits) + ")"


def pbw_reduce(spec, word):
    """Rewrite an arbitrary word of basis letters into PBW normal form."""
    word = tuple(word)
    if any(not (0 <= l < spec.dim) for l in word):
        raise ValueError(f"word {word} has letters outside the basis range")
    return PBWPoly._from_words(spec, _normal_form(spec, word))


def pbw_mul(a, b):
    """Product in U(g): concatenate monomials and reduce to normal form."""
    _check_same_spec(a.spec, b.spec, "multiplying U(g) elements")
    spec = a.spec
    out = {}
    for beta, cb in b.terms.items():
        word = _word_of_alpha(beta)
        table = {_word_of_alpha(alpha): ca for alpha, ca in a.terms.items()}
        for letter in word:
            table = _poly_right_letter(spec, table, letter)
        for w, c in table.items():
            _acc(out, _alpha_of_word(w, spec.dim), c * cb)
    return PBWPoly._raw(spec, out)


def _star_monomial(spec, alpha):
    """Normal form of ``(x^alpha)^*`` as a word table, memoized per spec."""
    cached = spec._star_cache.get(alpha)
    if cached is None:
        word = _word_of_alpha(alpha)
        sign = ONE if len(word) % 2 == 0 else -ONE
        table = _normal_form(spec, tuple(reversed(word)))
        cached = {w: c * sign for w, c in table.items()}
        spec._star_cache[alpha] = cached
    return cached


def star(a):
    """The antilinear antiautomorphism of U(g) with ``x^* = -x`` on g.

    Conjugates coefficients, reverses each monomial with sign
    ``(-1)^degree`` and reduces back to normal form.
    """
    spec = a.spec
    out = {}
    for alpha, coeff in a.terms.items():
        conj = coeff.conjugate()
        for w, c in _star_monomial(spec, alpha).items():
            _acc(out, _alpha_of_word(w, spec.dim), conj * c)
    return PBWPoly._raw(spec, out)


def bch_in_g(x, y, N):
    """Evaluate the BCH product ``x * y`` inside g, truncated at degree N.

    Each word of the free BCH series of length ``l`` is sent to
    ``1/l`` times its right-normed bracketing ``[w_1,[w_2,[...,w_l]..]]``
    with letters replaced by x and y; this reconstructs a Lie series
    word-by-word.  Exact whenever the inputs are exact; for nilpotent g of
    class c the result is independent of N once ``N >= c``.
    """
    _check_same_spec(x.spec, y.spec, "BCH of vectors")
    if N < 1:
        raise ValueError("bch_in_g needs N >= 1")
    spec = x.spec
    series = free_algebra.fa_bch(N)
    total = GVector(spec, (Scalar(0),) * spec.dim)
    for word, coeff in series.terms.items():
        if not word:
            continue
        vecs = [x if l == 0 else y for l in word]
        cur = vecs[-1]
        for v in reversed(vecs[:-1]):
            cur = bracket(v, cur)
        total = total + cur.scale(coeff * Fraction(1, len(word)))
    return total
