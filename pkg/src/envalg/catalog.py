"""Shipped example algebras, representations and functionals.

Everything here is exact: the spin-1/2 generators are ``-(i/2) sigma_k``,
spin 1 is the real antisymmetric adjoint action, and spin 3/2 is realized
inside the triple tensor power of spin 1/2 (acting on C^8) so that all
entries stay Gaussian rational -- the usual ladder-basis spin-3/2 matrices
would need sqrt(3).  The Heisenberg 3x3 rep is upper triangular and not
skew-hermitian; it exists for homomorphism-law checks only.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .functionals import FunctionalTable
from .gns import MatrixRep
from .lie_structure import LieAlgebraSpec
from .scalars import Scalar

__all__ = [
    "abelian",
    "heisenberg",
    "so3",
    "affine_line",
    "shipped_algebras",
    "spin_half",
    "spin_one",
    "spin_three_half",
    "heisenberg_rep",
    "delta_functional",
    "factorial_functional",
    "gaussian_functional",
    "laplace_functional",
    "gaussian_char",
]


def abelian(dim, weights=None):
    """R^dim with zero bracket."""
    names = [f"x{i + 1}" for i in range(dim)] if dim > 1 else ["x"]
    return LieAlgebraSpec(dim, names, {}, weights or [1] * dim)


def heisenberg(weights=(1, 1, 1)):
    """Three-dimensional Heisenberg algebra: [p, q] = z."""
    return LieAlgebraSpec(3, ["p", "q", "z"], {(0, 1): {2: 1}}, weights)


def so3(weights=(1, 1, 1)):
    """so(3) ~ su(2): [e1,e2]=e3, [e2,e3]=e1, [e3,e1]=e2."""
    structure = {(0, 1): {2: 1}, (1, 2): {0: 1}, (0, 2): {1: -1}}
    return LieAlgebraSpec(3, ["e1", "e2", "e3"], structure, weights)


def affine_line(weights=(1, 1)):
    """The two-dimensional nonabelian algebra [e1, e2] = e2."""
    return LieAlgebraSpec(2, ["e1", "e2"], {(0, 1): {1: 1}}, weights)


def shipped_algebras():
    return {
        "abelian2": abelian(2),
        "heisenberg": heisenberg(),
        "so3": so3(),
        "affine": affine_line(),
    }


_HALF = Fraction(1, 2)


def _pauli_half():
    """The three matrices ``-(i/2) sigma_k`` as exact 2x2 Scalar rows."""
    zero = Scalar(0)
    mihalf = Scalar(0, -_HALF)   # -i/2
    ihalf = Scalar(0, _HALF)     # +i/2
    s1 = ((zero, mihalf), (mihalf, zero))
    s2 = ((zero, Scalar(-_HALF)), (Scalar(_HALF), zero))
    s3 = ((mihalf, zero), (zero, ihalf))
    return (s1, s2, s3)


def spin_half():
    """su(2) spin-1/2: ``R(e_k) = -(i/2) sigma_k`` with cyclic vector (1, 0)."""
    gens = _pauli_half()
    return MatrixRep(
        so3(), 2, gens, (Scalar(1), Scalar(0)),
        skew_hermitian=True, exact=True, name="spin_half",
    )


def spin_one():
    """su(2) spin-1 as the real antisymmetric adjoint action on R^3."""
    spec = so3()
    gens = []
    for k in range(3):
        rows = [[Scalar(0)] * 3 for _ in range(3)]
        for j in range(3):
            for m, c in spec.bracket_of(k, j).items():
                rows[m][j] = c
        gens.append(tuple(tuple(r) for r in rows))
    return MatrixRep(
        spec, 3, gens, (Scalar(1), Scalar(0), Scalar(0)),
        skew_hermitian=True, exact=True, name="spin_one",
    )


def _kron(a, b):
    na, nb = len(a), len(b)
    out = []
    for i in range(na):
        for k in range(nb):
            out.append(tuple(a[i][j] * b[k][l] for j in range(na) for l in range(nb)))
    return tuple(out)


def spin_three_half():
    """Spin 3/2 via the diagonal action on the triple tensor power of C^2.

    The cyclic vector is the highest-weight vector ``e1 x e1 x e1``; its
    cyclic span is the 4-dimensional symmetric cube, so the GNS quotient
    recovers rank 4 once the degree reaches 3.
    """
    gens2 = _pauli_half()
    one2 = ((Scalar(1), Scalar(0)), (Scalar(0), Scalar(1)))
    gens = []
    for s in gens2:
        big1 = _kron(_kron(s, one2), one2)
        big2 = _kron(_kron(one2, s), one2)
        big3 = _kron(_kron(one2, one2), s)
        gens.append(
            tuple(
                tuple(big1[r][c] + big2[r][c] + big3[r][c] for c in range(8))
                for r in range(8)
            )
        )
    v = tuple(Scalar(1 if i == 0 else 0) for i in range(8))
    return MatrixRep(so3(), 8, gens, v, skew_hermitian=True, exact=True,
                     name="spin_three_half")


def heisenberg_rep():
    """Heisenberg as 3x3 strictly upper triangular matrices (not unitary).

    Satisfies the homomorphism law exactly but is not skew-hermitian, so it
    participates in homomorphism-order checks only, never in positivity.
    """
    z = Scalar(0)
    o = Scalar(1)
    p = ((z, o, z), (z, z, z), (z, z, z))
    q = ((z, z, z), (z, z, o), (z, z, z))
    zz = ((z, z, o), (z, z, z), (z, z, z))
    v = (Scalar(1), Scalar(0), Scalar(0))
    return MatrixRep(heisenberg(), 3, (p, q, zz), v, skew_hermitian=False,
                     exact=True, name="heisenberg_upper")


def delta_functional(spec, max_degree):
    """The counit-style functional with ``lam(1) = 1`` and zero elsewhere."""
    return FunctionalTable(spec, max_degree, {(0,) * spec.dim: Scalar(1)})


def factorial_functional(max_degree):
    """On g = R: ``lam(x^n) = n!`` (truncated Hadamard estimate exactly 1)."""
    spec = abelian(1)
    values = {(n,): Scalar(factorial(n)) for n in range(max_degree + 1)}
    return FunctionalTable(spec, max_degree, values)


def _double_factorial(n):
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def gaussian_functional(max_degree):
    """On g = R: derivatives of ``exp(-t^2/2)`` at 0.

    ``lam(x^(2n)) = (-1)^n (2n-1)!!`` with odd values zero; positive, with
    moment matrices congruent to the Hankel matrices of the standard normal
    moments 1, 0, 1, 0, 3, ...
    """
    spec = abelian(1)
    values = {}
    for n in range(0, max_degree + 1, 2):
        k = n // 2
        values[(n,)] = Scalar(Fraction((-1) ** k * _double_factorial(n - 1)))
    return FunctionalTable(spec, max_degree, values)


def laplace_functional(max_degree):
    """On g = R: derivatives of ``1/(1+t^2)`` at 0: ``lam(x^(2n)) = (-1)^n (2n)!``.

    Positive with functional radius estimate exactly 1 while the vector-norm
    series has root-test radius tending to 1/2 -- the sharp consistency
    factor between the two estimates.
    """
    spec = abelian(1)
    values = {}
    for n in range(0, max_degree + 1, 2):
        k = n // 2
        values[(n,)] = Scalar(Fraction((-1) ** k * factorial(n)))
    return FunctionalTable(spec, max_degree, values)


def gaussian_char(t):
    """Closed form ``exp(-t^2/2)`` matching :func:`gaussian_functional`."""
    import math

    return math.exp(-t * t / 2.0)
